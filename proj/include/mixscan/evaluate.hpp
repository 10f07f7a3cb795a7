#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "mixscan/mixsim.hpp"
#include "mixscan/report_io.hpp"

namespace mixscan {

struct PrecisionRecall {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    // n/a (nullopt) when the denominator is zero.
    std::optional<double> precision() const {
        if (tp + fp == 0) return std::nullopt;
        return static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
    std::optional<double> recall() const {
        if (tp + fn == 0) return std::nullopt;
        return static_cast<double>(tp) / static_cast<double>(tp + fn);
    }
};

struct EvalMetrics {
    PrecisionRecall chains;          // exact txid-sequence matches
    PrecisionRecall mixing_service;  // exact (address, label) matches
    PrecisionRecall dirty_sender;
    PrecisionRecall clean_recipient;
};

// Chains match on exact sequence equality; labels on exact
// (address, label) pairs. Partial-overlap credit is deliberately absent.
EvalMetrics evaluate_detection(const ReportView& report, const GroundTruth& truth);

std::string metrics_to_json(const EvalMetrics& metrics);
void print_metrics(std::ostream& out, const EvalMetrics& metrics);

}  // namespace mixscan
