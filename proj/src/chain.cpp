#include "mixscan/chain.hpp"

#include <algorithm>
#include <unordered_set>

namespace mixscan {

void ChainParams::validate() const {
    if (anomaly_threshold < 0) throw Error(Errc::BadParams, "anomaly_threshold must be >= 0");
    if (min_chain_len < 2) throw Error(Errc::BadParams, "min_chain_len must be >= 2");
    if (!(Rational(0) < time_median_min_minutes) ||
        !(time_median_min_minutes < time_median_max_minutes))
        throw Error(Errc::BadParams, "need 0 < time_median_min_minutes < time_median_max_minutes");
    if (max_backward_steps == 0) throw Error(Errc::BadParams, "max_backward_steps must be >= 1");
}

namespace {

bool fails_candidate(const Ledger& ledger, const Transaction& tx, const PatternParams& pparams) {
    auto verdict = try_classify(ledger, tx, pparams);
    return !verdict || !verdict->is_candidate;  // unresolvable (coinbase) counts as failing
}

void fill_minutes(const Ledger& ledger, ChainRecord& chain) {
    chain.inter_tx_minutes.clear();
    for (std::size_t i = 0; i + 1 < chain.txids.size(); ++i) {
        std::int64_t delta =
            ledger.tx(chain.txids[i + 1]).time_unix - ledger.tx(chain.txids[i]).time_unix;
        chain.inter_tx_minutes.push_back(Rational(delta, 60));
    }
}

}  // namespace

ChainRecord extend_backward(const Ledger& ledger, const std::string& seed,
                            const ChainParams& params, const PatternParams& pparams) {
    const Transaction* current = &ledger.tx(seed);  // throws SeedNotFound

    std::vector<std::string> reversed{seed};
    std::unordered_set<std::string> visited{seed};
    ChainRecord chain;
    std::size_t steps = 0;

    while (true) {
        if (chain.anomaly_count >= params.anomaly_threshold) {
            chain.aborted = true;
            break;
        }
        if (current->inputs.size() != 1) break;  // predecessor is undefined past this point
        if (++steps > params.max_backward_steps) break;

        const Transaction* prev = ledger.find_tx(current->inputs[0].txid);
        if (!prev) break;  // coinbase lineage exhausted or unchecked fixture
        if (visited.count(prev->txid))
            throw Error(Errc::CycleDetected, "backward walk revisited " + prev->txid);

        if (is_sweeper(*prev, pparams)) {
            chain.sweeper_root = prev->txid;
            reversed.push_back(prev->txid);
            break;
        }
        if (fails_candidate(ledger, *prev, pparams)) {
            ++chain.anomaly_count;
            if (prev->inputs.size() != 1) break;  // cannot step through a many-input anomaly
        }
        reversed.push_back(prev->txid);
        visited.insert(prev->txid);
        current = prev;
    }

    chain.txids.assign(reversed.rbegin(), reversed.rend());
    fill_minutes(ledger, chain);
    return chain;
}

ChainRecord extend_forward(const Ledger& ledger, const std::string& from,
                           const ChainParams& params, const PatternParams& pparams,
                           int initial_anomalies) {
    const Transaction* current = &ledger.tx(from);

    ChainRecord chain;
    chain.anomaly_count = initial_anomalies;
    std::unordered_set<std::string> visited{from};

    while (true) {
        if (chain.anomaly_count >= params.anomaly_threshold) {
            chain.aborted = true;
            break;
        }
        Outpoint greater{current->txid, static_cast<std::uint32_t>(greater_output_index(*current))};
        auto spender = ledger.spender_of(greater);
        if (!spender) break;  // frontier reached
        if (visited.count(*spender))
            throw Error(Errc::CycleDetected, "forward walk revisited " + *spender);

        const Transaction& next = ledger.tx(*spender);
        if (fails_candidate(ledger, next, pparams)) ++chain.anomaly_count;
        chain.txids.push_back(next.txid);
        visited.insert(next.txid);
        current = &next;
    }

    fill_minutes(ledger, chain);
    return chain;
}

ChainRecord build_chain(const Ledger& ledger, const std::string& seed,
                        const ChainParams& params, const PatternParams& pparams) {
    ChainRecord backward = extend_backward(ledger, seed, params, pparams);
    ChainRecord forward = extend_forward(ledger, seed, params, pparams, backward.anomaly_count);

    ChainRecord chain;
    chain.txids = std::move(backward.txids);
    chain.txids.insert(chain.txids.end(), forward.txids.begin(), forward.txids.end());
    chain.sweeper_root = backward.sweeper_root;
    chain.anomaly_count = forward.anomaly_count;  // shared budget, forward carries the total
    chain.aborted = backward.aborted || forward.aborted;
    fill_minutes(ledger, chain);
    return chain;
}

Rational chain_time_median(const ChainRecord& chain) {
    if (chain.txids.size() < 2)
        throw Error(Errc::ChainTooShort, "time median needs at least 2 transactions");
    return median(chain.inter_tx_minutes);
}

}  // namespace mixscan
