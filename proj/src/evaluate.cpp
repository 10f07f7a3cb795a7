#include "mixscan/evaluate.hpp"

#include <set>

#include <json.hpp>

namespace mixscan {

namespace {

PrecisionRecall match_sets(const std::set<std::string>& reported,
                           const std::set<std::string>& expected) {
    PrecisionRecall pr;
    for (const std::string& r : reported) {
        if (expected.count(r)) ++pr.tp;
        else ++pr.fp;
    }
    pr.fn = static_cast<std::int64_t>(expected.size()) - pr.tp;
    return pr;
}

}  // namespace

EvalMetrics evaluate_detection(const ReportView& report, const GroundTruth& truth) {
    EvalMetrics metrics;

    std::set<std::vector<std::string>> expected_chains(truth.mixer_chains.begin(),
                                                       truth.mixer_chains.end());
    std::set<std::vector<std::string>> reported_chains(report.chains.begin(),
                                                       report.chains.end());
    for (const auto& chain : reported_chains) {
        if (expected_chains.count(chain)) ++metrics.chains.tp;
        else ++metrics.chains.fp;
    }
    metrics.chains.fn = static_cast<std::int64_t>(expected_chains.size()) - metrics.chains.tp;

    std::set<std::string> reported_mixing, reported_dirty, reported_clean;
    for (const auto& [address, kind] : report.labels) {
        switch (kind) {
            case LabelKind::MixingService: reported_mixing.insert(address); break;
            case LabelKind::DirtySender: reported_dirty.insert(address); break;
            case LabelKind::CleanRecipient: reported_clean.insert(address); break;
        }
    }
    metrics.mixing_service = match_sets(
        reported_mixing, {truth.mixer_addresses.begin(), truth.mixer_addresses.end()});
    metrics.dirty_sender =
        match_sets(reported_dirty, {truth.dirty_addresses.begin(), truth.dirty_addresses.end()});
    metrics.clean_recipient =
        match_sets(reported_clean, {truth.clean_addresses.begin(), truth.clean_addresses.end()});
    return metrics;
}

namespace {

nlohmann::ordered_json pr_to_json(const PrecisionRecall& pr) {
    nlohmann::ordered_json j;
    j["precision"] = pr.precision() ? nlohmann::ordered_json(*pr.precision())
                                    : nlohmann::ordered_json("n/a");
    j["recall"] = pr.recall() ? nlohmann::ordered_json(*pr.recall())
                              : nlohmann::ordered_json("n/a");
    j["tp"] = pr.tp;
    j["fp"] = pr.fp;
    j["fn"] = pr.fn;
    return j;
}

std::string pr_field(std::optional<double> v) {
    return v ? std::to_string(*v) : std::string("n/a");
}

}  // namespace

std::string metrics_to_json(const EvalMetrics& metrics) {
    nlohmann::ordered_json doc;
    doc["chain_precision"] = metrics.chains.precision()
                                 ? nlohmann::ordered_json(*metrics.chains.precision())
                                 : nlohmann::ordered_json("n/a");
    doc["chain_recall"] = metrics.chains.recall()
                              ? nlohmann::ordered_json(*metrics.chains.recall())
                              : nlohmann::ordered_json("n/a");
    doc["chains"] = pr_to_json(metrics.chains);
    doc["labels"] = {{"mixing_service", pr_to_json(metrics.mixing_service)},
                     {"dirty_sender", pr_to_json(metrics.dirty_sender)},
                     {"clean_recipient", pr_to_json(metrics.clean_recipient)}};
    return doc.dump();
}

void print_metrics(std::ostream& out, const EvalMetrics& metrics) {
    auto line = [&](const char* name, const PrecisionRecall& pr) {
        out << name << ": precision=" << pr_field(pr.precision())
            << " recall=" << pr_field(pr.recall()) << " tp=" << pr.tp << " fp=" << pr.fp
            << " fn=" << pr.fn << '\n';
    };
    line("chains         ", metrics.chains);
    line("mixing_service ", metrics.mixing_service);
    line("dirty_sender   ", metrics.dirty_sender);
    line("clean_recipient", metrics.clean_recipient);
}

}  // namespace mixscan
