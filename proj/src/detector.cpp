#include "mixscan/detector.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mixscan {

const char* label_kind_name(LabelKind kind) {
    switch (kind) {
        case LabelKind::MixingService: return "mixing_service";
        case LabelKind::DirtySender: return "dirty_sender";
        case LabelKind::CleanRecipient: return "clean_recipient";
    }
    return "?";
}

std::optional<LabelKind> label_kind_from_name(const std::string& name) {
    if (name == "mixing_service") return LabelKind::MixingService;
    if (name == "dirty_sender") return LabelKind::DirtySender;
    if (name == "clean_recipient") return LabelKind::CleanRecipient;
    return std::nullopt;
}

const char* label_source_name(LabelSource src) {
    switch (src) {
        case LabelSource::IntermediateInput: return "intermediate_input";
        case LabelSource::IntermediateP2shOutput: return "intermediate_p2sh_output";
        case LabelSource::SweeperMember: return "sweeper_member";
        case LabelSource::CleanSideOutput: return "clean_side_output";
        case LabelSource::DirtyTrace: return "dirty_trace";
        case LabelSource::ClusterPropagation: return "cluster_propagation";
    }
    return "?";
}

const char* reject_reason_name(RejectReason reason) {
    switch (reason) {
        case RejectReason::AnomalyCap: return "anomaly_cap";
        case RejectReason::NoSweeperRoot: return "no_sweeper_root";
        case RejectReason::MinLength: return "min_length";
        case RejectReason::TimeMedian: return "time_median";
    }
    return "?";
}

std::pair<bool, std::optional<RejectReason>> accept_chain(const ChainRecord& chain,
                                                          const ChainParams& params) {
    if (chain.aborted) return {false, RejectReason::AnomalyCap};
    if (!chain.sweeper_root) return {false, RejectReason::NoSweeperRoot};
    if (chain.txids.size() < params.min_chain_len) return {false, RejectReason::MinLength};
    Rational med = chain_time_median(chain);
    if (med < params.time_median_min_minutes || med > params.time_median_max_minutes)
        return {false, RejectReason::TimeMedian};
    return {true, std::nullopt};
}

std::vector<AddressLabel> label_chain(const Ledger& ledger, const ChainRecord& chain) {
    std::vector<AddressLabel> labels;
    if (chain.txids.empty()) return labels;
    const std::string chain_id = chain.sweeper_root ? *chain.sweeper_root : chain.txids.front();

    auto add = [&](const std::string& address, LabelKind kind, LabelSource source) {
        labels.push_back({address, kind, source, chain_id});
    };

    // Root: every address touching the sweeper is service-owned.
    if (chain.sweeper_root) {
        const Transaction& sweeper = ledger.tx(*chain.sweeper_root);
        for (const Outpoint& op : sweeper.inputs)
            add(ledger.output_at(op).address, LabelKind::MixingService, LabelSource::SweeperMember);
        for (const TxOutput& out : sweeper.outputs)
            add(out.address, LabelKind::MixingService, LabelSource::SweeperMember);
    }

    std::size_t first_intermediate = chain.sweeper_root ? 1 : 0;
    for (std::size_t i = first_intermediate; i < chain.txids.size(); ++i) {
        const Transaction& tx = ledger.tx(chain.txids[i]);
        for (const Outpoint& op : tx.inputs)
            add(ledger.output_at(op).address, LabelKind::MixingService,
                LabelSource::IntermediateInput);
        // The output split is only defined on the 1:2 withdrawal shape;
        // anomalous members (relays and the like) contribute inputs only.
        if (tx.outputs.size() == 2) {
            std::size_t service = service_output_index(tx);
            add(tx.outputs[service].address, LabelKind::MixingService,
                LabelSource::IntermediateP2shOutput);
            add(tx.outputs[1 - service].address, LabelKind::CleanRecipient,
                LabelSource::CleanSideOutput);
        }
    }
    return labels;
}

std::vector<AddressLabel> trace_dirty(const Ledger& ledger, const std::string& sweeper_txid,
                                      const PatternParams& pparams) {
    const Transaction* sweeper = ledger.find_tx(sweeper_txid);
    if (!sweeper) throw Error(Errc::SweeperNotFound, sweeper_txid);
    if (!is_sweeper(*sweeper, pparams))
        throw Error(Errc::NotASweeper, sweeper_txid + " does not match the sweeper shape");

    std::vector<AddressLabel> labels;
    std::unordered_set<std::string> seen;
    for (const Outpoint& op : sweeper->inputs) {
        // The deposit is the exact transaction that created the swept
        // output, not just any transaction funding that address.
        const Transaction& deposit = ledger.tx(op.txid);
        for (const Outpoint& dep_in : deposit.inputs) {
            const std::string& sender = ledger.output_at(dep_in).address;
            if (seen.insert(sender).second)
                labels.push_back({sender, LabelKind::DirtySender, LabelSource::DirtyTrace,
                                  sweeper_txid});
        }
    }
    return labels;
}

DetectionReport run_detection(const Ledger& ledger, const ChainParams& params,
                              const PatternParams& pparams,
                              std::optional<std::pair<std::uint32_t, std::uint32_t>> height_range) {
    params.validate();
    pparams.validate();

    DetectionReport report;
    auto& diag = report.diagnostics;

    std::unordered_set<std::string> recorded_roots;
    std::unordered_set<std::string> rejected_keys;
    std::unordered_map<std::string, LabelKind> label_of;
    std::unordered_set<std::string> conflict_keys;

    auto note_conflict = [&](const std::string& address, LabelKind a, LabelKind b,
                             const std::string& context) {
        std::string key = address + '|' + label_kind_name(a) + '|' + label_kind_name(b) + '|' + context;
        if (conflict_keys.insert(key).second) report.conflicts.push_back({address, a, b, context});
    };

    auto merge_labels = [&](const std::vector<AddressLabel>& labels) {
        for (const AddressLabel& label : labels) {
            auto [it, inserted] = label_of.emplace(label.address, label.label);
            if (inserted) {
                report.labels.push_back(label);
            } else if (it->second != label.label) {
                note_conflict(label.address, it->second, label.label, "chain:" + label.chain_id);
            }
        }
    };

    for (const Block& block : ledger.blocks()) {
        if (height_range &&
            (block.height < height_range->first || block.height > height_range->second))
            continue;
        ++diag.blocks_scanned;

        ScanDiag scan_diag;
        std::vector<std::string> seeds = scan_block(ledger, block, pparams, &scan_diag);
        diag.txs_scanned += scan_diag.scanned;
        diag.unresolvable_txs += scan_diag.unresolvable;
        diag.seeds_found += seeds.size();

        for (const std::string& seed : seeds) {
            ChainRecord chain = build_chain(ledger, seed, params, pparams);
            ++diag.chains_built;

            auto [accepted, reason] = accept_chain(chain, params);
            if (!accepted) {
                switch (*reason) {
                    case RejectReason::AnomalyCap: ++diag.rejected_anomaly_cap; break;
                    case RejectReason::NoSweeperRoot: ++diag.rejected_no_sweeper_root; break;
                    case RejectReason::MinLength: ++diag.rejected_min_length; break;
                    case RejectReason::TimeMedian: ++diag.rejected_time_median; break;
                }
                std::string key = chain.sweeper_root ? *chain.sweeper_root : chain.txids.front();
                if (rejected_keys.insert(key).second) {
                    RejectedChain rejected;
                    rejected.key = key;
                    rejected.length = chain.txids.size();
                    rejected.sweeper_root = chain.sweeper_root;
                    if (chain.txids.size() >= 2) rejected.median_minutes = chain_time_median(chain);
                    rejected.reason = *reason;
                    diag.rejected_chains.push_back(std::move(rejected));
                }
                continue;
            }

            // One report entry per sweeper root; the first seed in block
            // order wins, later seeds of the same chain are duplicates.
            if (!recorded_roots.insert(*chain.sweeper_root).second) {
                ++diag.seeds_deduplicated;
                continue;
            }
            ++diag.chains_accepted;

            merge_labels(label_chain(ledger, chain));
            merge_labels(trace_dirty(ledger, *chain.sweeper_root, pparams));
            report.chains.push_back({*chain.sweeper_root, std::move(chain)});
        }
    }

    std::sort(report.chains.begin(), report.chains.end(),
              [](const AcceptedChain& a, const AcceptedChain& b) { return a.id < b.id; });
    std::sort(report.labels.begin(), report.labels.end(),
              [](const AddressLabel& a, const AddressLabel& b) { return a.address < b.address; });
    std::sort(report.conflicts.begin(), report.conflicts.end(),
              [](const LabelConflict& a, const LabelConflict& b) { return a.address < b.address; });
    std::sort(diag.rejected_chains.begin(), diag.rejected_chains.end(),
              [](const RejectedChain& a, const RejectedChain& b) { return a.key < b.key; });
    return report;
}

}  // namespace mixscan
