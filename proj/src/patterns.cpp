#include "mixscan/patterns.hpp"

namespace mixscan {

void PatternParams::validate() const {
    if (input_value_threshold_sat <= 0)
        throw Error(Errc::BadParams, "input_value_threshold_sat must be positive");
    if (!(ratio_threshold > Rational(1)))
        throw Error(Errc::BadParams, "ratio_threshold must exceed 1");
    if (sweeper_min_inputs < 3) throw Error(Errc::BadParams, "sweeper_min_inputs must be >= 3");
    if (sweeper_max_outputs != 1 && sweeper_max_outputs != 2)
        throw Error(Errc::BadParams, "sweeper_max_outputs must be 1 or 2");
}

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::InputCount: return "InputCount";
        case Condition::OutputCount: return "OutputCount";
        case Condition::AddressTypes: return "AddressTypes";
        case Condition::AmountRatio: return "AmountRatio";
        case Condition::InputValue: return "InputValue";
    }
    return "?";
}

std::size_t service_output_index(const Transaction& tx) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < tx.outputs.size(); ++i) {
        const TxOutput& a = tx.outputs[i];
        const TxOutput& b = tx.outputs[best];
        bool a_p2sh = a.type == AddrType::P2SH;
        bool b_p2sh = b.type == AddrType::P2SH;
        if (a_p2sh != b_p2sh) {
            if (a_p2sh) best = i;
        } else if (a.value_sat > b.value_sat) {
            best = i;
        }
    }
    return best;
}

std::size_t greater_output_index(const Transaction& tx) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < tx.outputs.size(); ++i) {
        const TxOutput& a = tx.outputs[i];
        const TxOutput& b = tx.outputs[best];
        if (a.value_sat != b.value_sat) {
            if (a.value_sat > b.value_sat) best = i;
        } else if ((a.type == AddrType::P2SH) && b.type != AddrType::P2SH) {
            best = i;
        }
    }
    return best;
}

namespace {

// value_a >= threshold * value_b, cross-multiplied so exact-ratio
// boundaries never hit floating point.
bool ratio_holds(std::int64_t value_a, std::int64_t value_b, const Rational& threshold) {
    return static_cast<__int128>(value_a) * threshold.den >=
           static_cast<__int128>(threshold.num) * value_b;
}

}  // namespace

std::optional<CandidateVerdict> try_classify(const Ledger& ledger, const Transaction& tx,
                                             const PatternParams& params) {
    if (tx.is_coinbase()) return std::nullopt;

    const TxOutput* funding = nullptr;
    if (tx.inputs.size() == 1) {
        const Transaction* prev = ledger.find_tx(tx.inputs[0].txid);
        if (!prev || tx.inputs[0].vout >= prev->outputs.size()) return std::nullopt;
        funding = &prev->outputs[tx.inputs[0].vout];
    }

    CandidateVerdict verdict;
    if (tx.inputs.size() != 1) verdict.failed.push_back(Condition::InputCount);
    if (tx.outputs.size() != 2) verdict.failed.push_back(Condition::OutputCount);

    // The remaining conditions read "the" input and "the two" outputs, so
    // they are only decidable on the 1-in shape (resp. 2-out).
    if (funding) {
        if (tx.outputs.size() == 2) {
            bool types_ok = funding->type == AddrType::P2SH &&
                            (tx.outputs[0].type == AddrType::P2SH ||
                             tx.outputs[1].type == AddrType::P2SH);
            if (!types_ok) verdict.failed.push_back(Condition::AddressTypes);

            std::size_t service = service_output_index(tx);
            std::int64_t service_value = tx.outputs[service].value_sat;
            std::int64_t other_value = tx.outputs[1 - service].value_sat;
            if (!ratio_holds(service_value, other_value, params.ratio_threshold))
                verdict.failed.push_back(Condition::AmountRatio);
        }
        if (funding->value_sat <= params.input_value_threshold_sat)
            verdict.failed.push_back(Condition::InputValue);
    }

    verdict.is_candidate = verdict.failed.empty();
    return verdict;
}

CandidateVerdict classify_candidate(const Ledger& ledger, const Transaction& tx,
                                    const PatternParams& params) {
    auto verdict = try_classify(ledger, tx, params);
    if (!verdict)
        throw Error(Errc::UnresolvableInput,
                    "tx " + tx.txid + (tx.is_coinbase() ? " is coinbase" : " has an unresolvable input"));
    return *verdict;
}

std::vector<std::string> scan_block(const Ledger& ledger, const Block& block,
                                    const PatternParams& params, ScanDiag* diag) {
    std::vector<std::string> candidates;
    for (const Transaction& tx : block.txs) {
        if (diag) ++diag->scanned;
        auto verdict = try_classify(ledger, tx, params);
        if (!verdict) {
            if (diag) ++diag->unresolvable;
            continue;
        }
        if (verdict->is_candidate) candidates.push_back(tx.txid);
    }
    return candidates;
}

bool is_sweeper(const Transaction& tx, const PatternParams& params) {
    return tx.inputs.size() >= static_cast<std::size_t>(params.sweeper_min_inputs) &&
           tx.outputs.size() <= static_cast<std::size_t>(params.sweeper_max_outputs);
}

}  // namespace mixscan
