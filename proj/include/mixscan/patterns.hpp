#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixscan/ledger.hpp"
#include "mixscan/rational.hpp"

namespace mixscan {

struct PatternParams {
    std::int64_t input_value_threshold_sat = 100'000'000;  // strict >: "more than 1 BTC"
    Rational ratio_threshold{5, 1};                        // inclusive >=
    int sweeper_min_inputs = 10;
    int sweeper_max_outputs = 2;

    void validate() const;
};

// The five candidate conditions, in the order they are checked.
enum class Condition { InputCount, OutputCount, AddressTypes, AmountRatio, InputValue };

const char* condition_name(Condition c);

struct CandidateVerdict {
    bool is_candidate = false;
    std::vector<Condition> failed;  // empty <=> is_candidate
};

// Index of the service-side output: the script-hash output, or the
// larger-value one when both (or neither) are script-hash; ties break to
// the script-hash output, then to the lower index. Requires >= 1 output.
std::size_t service_output_index(const Transaction& tx);

// Index of the greater-value output the forward walk follows: strictly
// larger value wins; on a tie the script-hash output wins, then the lower
// index. Requires >= 1 output.
std::size_t greater_output_index(const Transaction& tx);

// Candidate test for an intermediate mixing withdrawal: exactly one input,
// exactly two outputs, script-hash funding and at least one script-hash
// output, service-side value at least ratio_threshold times the other, and
// input value strictly above the threshold. Throws UnresolvableInput when
// tx is coinbase or its funding output cannot be resolved.
CandidateVerdict classify_candidate(const Ledger& ledger, const Transaction& tx,
                                    const PatternParams& params);

// Same test, nullopt instead of a throw when the tx cannot be classified.
std::optional<CandidateVerdict> try_classify(const Ledger& ledger, const Transaction& tx,
                                             const PatternParams& params);

struct ScanDiag {
    std::size_t scanned = 0;
    std::size_t unresolvable = 0;
};

// Candidate txids of one block, in block order. Unclassifiable txs
// (coinbases) are skipped and counted.
std::vector<std::string> scan_block(const Ledger& ledger, const Block& block,
                                    const PatternParams& params, ScanDiag* diag = nullptr);

// Many-input aggregation shape: inputs >= sweeper_min_inputs and outputs
// <= sweeper_max_outputs.
bool is_sweeper(const Transaction& tx, const PatternParams& params);

}  // namespace mixscan
