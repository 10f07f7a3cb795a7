#pragma once

#include <map>
#include <string>

#include "mixscan/chain.hpp"
#include "mixscan/patterns.hpp"

namespace mixscan {

struct DetectionParams {
    PatternParams pattern;
    ChainParams chain;
};

// Plain "key = value" lines, '#' comments, blank lines ignored.
// Unknown keys are an error: the keys are the experiment's levers and a
// typo must not silently fall back to a default.
std::map<std::string, std::string> parse_kv_file(const std::string& path);
std::map<std::string, std::string> parse_kv_text(const std::string& text);

// Detection thresholds from a params file. Missing keys keep defaults.
DetectionParams detection_params_from_file(const std::string& path);
DetectionParams detection_params_from_kv(const std::map<std::string, std::string>& kv);

}  // namespace mixscan
