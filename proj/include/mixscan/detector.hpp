#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixscan/chain.hpp"
#include "mixscan/ledger.hpp"
#include "mixscan/patterns.hpp"

namespace mixscan {

enum class LabelKind { MixingService, DirtySender, CleanRecipient };
enum class LabelSource {
    IntermediateInput,
    IntermediateP2shOutput,
    SweeperMember,
    CleanSideOutput,
    DirtyTrace,
    ClusterPropagation,
};

const char* label_kind_name(LabelKind kind);      // "mixing_service" ...
const char* label_source_name(LabelSource src);   // "intermediate_input" ...
std::optional<LabelKind> label_kind_from_name(const std::string& name);

struct AddressLabel {
    std::string address;
    LabelKind label = LabelKind::MixingService;
    LabelSource source = LabelSource::IntermediateInput;
    std::string chain_id;  // sweeper root txid of the evidencing chain

    bool operator==(const AddressLabel&) const = default;
};

enum class RejectReason { AnomalyCap, NoSweeperRoot, MinLength, TimeMedian };

const char* reject_reason_name(RejectReason reason);

// Chain-level acceptance: not aborted, sweeper-rooted, length >= min, and
// gap median inside [min, max] minutes (both bounds inclusive).
std::pair<bool, std::optional<RejectReason>> accept_chain(const ChainRecord& chain,
                                                          const ChainParams& params);

// Address labels of one accepted chain. The sweeper root contributes every
// input and output address as service-owned; each later member contributes
// its input funding addresses (service), and on the 1:2 shape its
// service-side output (service) and the other output (clean recipient).
std::vector<AddressLabel> label_chain(const Ledger& ledger, const ChainRecord& chain);

// Dirty-sender tracing from a sweeper: for each sweeper input, the
// transaction that created the spent output is the deposit; that deposit's
// own input funding addresses are the senders. Coinbase deposits contribute
// nothing. Throws SweeperNotFound / NotASweeper.
std::vector<AddressLabel> trace_dirty(const Ledger& ledger, const std::string& sweeper_txid,
                                      const PatternParams& pparams);

struct LabelConflict {
    std::string address;
    LabelKind first = LabelKind::MixingService;
    LabelKind second = LabelKind::MixingService;
    std::string context;  // "chain:<id>" or "cluster:<id>"

    bool operator==(const LabelConflict&) const = default;
};

// One rejected chain, kept for error analysis; deduplicated by root (or
// first txid when no root was found).
struct RejectedChain {
    std::string key;
    std::size_t length = 0;
    std::optional<std::string> sweeper_root;
    std::optional<Rational> median_minutes;
    RejectReason reason = RejectReason::NoSweeperRoot;
};

struct DetectionDiagnostics {
    std::size_t blocks_scanned = 0;
    std::size_t txs_scanned = 0;
    std::size_t unresolvable_txs = 0;
    std::size_t seeds_found = 0;
    std::size_t seeds_deduplicated = 0;  // seed fell inside an already-recorded chain
    std::size_t chains_built = 0;
    std::size_t chains_accepted = 0;
    std::size_t rejected_anomaly_cap = 0;
    std::size_t rejected_no_sweeper_root = 0;
    std::size_t rejected_min_length = 0;
    std::size_t rejected_time_median = 0;
    std::vector<RejectedChain> rejected_chains;  // deduplicated
};

struct AcceptedChain {
    std::string id;  // sweeper root txid
    ChainRecord chain;
};

struct DetectionReport {
    std::vector<AcceptedChain> chains;    // sorted by id
    std::vector<AddressLabel> labels;     // one per address, sorted by address
    std::vector<LabelConflict> conflicts; // sorted by address
    DetectionDiagnostics diagnostics;
};

// The full two-phase pipeline over a height range (default: every block):
// scan for seeds, expand each into a chain, filter at chain level,
// deduplicate by sweeper root (first in block order wins), then label and
// trace. Deterministic for fixed inputs.
DetectionReport run_detection(const Ledger& ledger, const ChainParams& params,
                              const PatternParams& pparams,
                              std::optional<std::pair<std::uint32_t, std::uint32_t>> height_range =
                                  std::nullopt);

}  // namespace mixscan
