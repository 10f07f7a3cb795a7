#include "mixscan/report_io.hpp"

#include <fstream>

#include <json.hpp>

namespace mixscan {

std::string report_to_json(const DetectionReport& report) {
    nlohmann::ordered_json doc;

    auto& chains = doc["chains"] = nlohmann::ordered_json::array();
    for (const AcceptedChain& accepted : report.chains) {
        nlohmann::ordered_json jchain;
        jchain["id"] = accepted.id;
        jchain["txids"] = accepted.chain.txids;
        jchain["anomalies"] = accepted.chain.anomaly_count;
        jchain["time_median_min"] = chain_time_median(accepted.chain).to_double();
        chains.push_back(std::move(jchain));
    }

    auto& labels = doc["labels"] = nlohmann::ordered_json::array();
    for (const AddressLabel& label : report.labels) {
        labels.push_back({{"address", label.address},
                          {"label", label_kind_name(label.label)},
                          {"source", label_source_name(label.source)},
                          {"chain_id", label.chain_id}});
    }

    auto& conflicts = doc["conflicts"] = nlohmann::ordered_json::array();
    for (const LabelConflict& conflict : report.conflicts) {
        conflicts.push_back({{"address", conflict.address},
                             {"first", label_kind_name(conflict.first)},
                             {"second", label_kind_name(conflict.second)},
                             {"context", conflict.context}});
    }

    const DetectionDiagnostics& diag = report.diagnostics;
    nlohmann::ordered_json jdiag;
    jdiag["blocks_scanned"] = diag.blocks_scanned;
    jdiag["txs_scanned"] = diag.txs_scanned;
    jdiag["unresolvable_txs"] = diag.unresolvable_txs;
    jdiag["seeds_found"] = diag.seeds_found;
    jdiag["seeds_deduplicated"] = diag.seeds_deduplicated;
    jdiag["chains_built"] = diag.chains_built;
    jdiag["chains_accepted"] = diag.chains_accepted;
    jdiag["rejected"] = {{"anomaly_cap", diag.rejected_anomaly_cap},
                         {"no_sweeper_root", diag.rejected_no_sweeper_root},
                         {"min_length", diag.rejected_min_length},
                         {"time_median", diag.rejected_time_median}};
    auto& rejected = jdiag["rejected_chains"] = nlohmann::ordered_json::array();
    for (const RejectedChain& r : diag.rejected_chains) {
        nlohmann::ordered_json jr;
        jr["key"] = r.key;
        jr["length"] = r.length;
        jr["sweeper_root"] = r.sweeper_root ? nlohmann::ordered_json(*r.sweeper_root)
                                            : nlohmann::ordered_json(nullptr);
        jr["median_minutes"] = r.median_minutes ? nlohmann::ordered_json(r.median_minutes->to_double())
                                                : nlohmann::ordered_json(nullptr);
        jr["reason"] = reject_reason_name(r.reason);
        rejected.push_back(std::move(jr));
    }
    doc["diagnostics"] = std::move(jdiag);

    return doc.dump();
}

void write_report_file(const std::string& path, const DetectionReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot write " + path);
    out << report_to_json(report) << '\n';
    if (!out) throw Error(Errc::IoError, "write failed for " + path);
}

ReportView report_view(const DetectionReport& report) {
    ReportView view;
    for (const AcceptedChain& accepted : report.chains) view.chains.push_back(accepted.chain.txids);
    for (const AddressLabel& label : report.labels) view.labels.emplace_back(label.address, label.label);
    return view;
}

ReportView read_report_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::MalformedRecord, std::string("report file: ") + e.what());
    }

    ReportView view;
    try {
        for (const auto& jchain : doc.at("chains"))
            view.chains.push_back(jchain.at("txids").get<std::vector<std::string>>());
        for (const auto& jlabel : doc.at("labels")) {
            auto kind = label_kind_from_name(jlabel.at("label").get<std::string>());
            if (!kind)
                throw Error(Errc::MalformedRecord,
                            "report file: unknown label '" + jlabel.at("label").get<std::string>() + "'");
            view.labels.emplace_back(jlabel.at("address").get<std::string>(), *kind);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::MalformedRecord, std::string("report file: ") + e.what());
    }
    return view;
}

}  // namespace mixscan
