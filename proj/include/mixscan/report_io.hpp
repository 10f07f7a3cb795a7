#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mixscan/detector.hpp"

namespace mixscan {

// Canonical JSON for a detection report: chains sorted by id, labels by
// address. Identical reports serialize to identical bytes.
std::string report_to_json(const DetectionReport& report);
void write_report_file(const std::string& path, const DetectionReport& report);

// The slice of a report file evaluation needs.
struct ReportView {
    std::vector<std::vector<std::string>> chains;             // txid sequences
    std::vector<std::pair<std::string, LabelKind>> labels;    // (address, label)
};

ReportView report_view(const DetectionReport& report);
ReportView read_report_file(const std::string& path);

}  // namespace mixscan
