#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixscan/ledger.hpp"
#include "mixscan/patterns.hpp"
#include "mixscan/rational.hpp"

namespace mixscan {

struct ChainParams {
    int anomaly_threshold = 4;
    std::size_t min_chain_len = 53;
    Rational time_median_min_minutes{20, 1};
    Rational time_median_max_minutes{80, 1};
    std::size_t max_backward_steps = 10'000;

    void validate() const;
};

// An ordered transaction chain: consecutive members are linked by a spent
// output, heights never decrease. txids.front() is the sweeper root when
// one was found.
struct ChainRecord {
    std::vector<std::string> txids;
    std::optional<std::string> sweeper_root;
    int anomaly_count = 0;
    std::vector<Rational> inter_tx_minutes;  // txids.size() - 1 entries
    bool aborted = false;                    // a walk hit the anomaly cap

    bool operator==(const ChainRecord&) const = default;
};

// Walks from the seed's single input to its funding transaction and onward
// until a sweeper is met (included as the first element) or the anomaly cap
// or step bound stops the walk. Returns [predecessors..., seed] in
// chronological order. Non-sweeper predecessors failing the candidate test
// count as anomalies; a predecessor with more than one input that is
// neither sweeper nor candidate ends the walk (no root).
ChainRecord extend_backward(const Ledger& ledger, const std::string& seed,
                            const ChainParams& params, const PatternParams& pparams);

// Follows the greater-value output of each transaction to its spender until
// the output is unspent or the anomaly cap stops the walk. Returns
// successors only. initial_anomalies carries the backward walk's count when
// the two walks share one budget.
ChainRecord extend_forward(const Ledger& ledger, const std::string& from,
                           const ChainParams& params, const PatternParams& pparams,
                           int initial_anomalies = 0);

// Full chain through the seed: backward walk, then forward walk continuing
// on the same anomaly budget.
ChainRecord build_chain(const Ledger& ledger, const std::string& seed,
                        const ChainParams& params, const PatternParams& pparams);

// Median of the chain's inter-transaction gaps, in minutes. Even-length
// gap lists use the mean of the two central values. Throws ChainTooShort
// on chains of fewer than two transactions.
Rational chain_time_median(const ChainRecord& chain);

}  // namespace mixscan
