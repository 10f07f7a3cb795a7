#include "mixscan/params.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace mixscan {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

}  // namespace

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::BadParams, "line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw Error(Errc::BadParams, "line " + std::to_string(line_no) + ": empty key or value");
        if (kv.count(key))
            throw Error(Errc::BadParams, "duplicate key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_kv_text(buffer.str());
}

namespace {

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        long long v = std::stoll(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::BadParams, "key '" + key + "': '" + value + "' is not an integer");
    }
}

}  // namespace

DetectionParams detection_params_from_kv(const std::map<std::string, std::string>& kv) {
    DetectionParams params;
    for (const auto& [key, value] : kv) {
        if (key == "input_value_threshold_sat") {
            params.pattern.input_value_threshold_sat = parse_int(key, value);
        } else if (key == "ratio_threshold") {
            params.pattern.ratio_threshold = parse_rational(value);
        } else if (key == "sweeper_min_inputs") {
            params.pattern.sweeper_min_inputs = static_cast<int>(parse_int(key, value));
        } else if (key == "sweeper_max_outputs") {
            params.pattern.sweeper_max_outputs = static_cast<int>(parse_int(key, value));
        } else if (key == "anomaly_threshold") {
            params.chain.anomaly_threshold = static_cast<int>(parse_int(key, value));
        } else if (key == "min_chain_len") {
            params.chain.min_chain_len = static_cast<std::size_t>(parse_int(key, value));
        } else if (key == "time_median_min_minutes") {
            params.chain.time_median_min_minutes = parse_rational(value);
        } else if (key == "time_median_max_minutes") {
            params.chain.time_median_max_minutes = parse_rational(value);
        } else if (key == "max_backward_steps") {
            params.chain.max_backward_steps = static_cast<std::size_t>(parse_int(key, value));
        } else {
            throw Error(Errc::BadParams, "unknown key '" + key + "'");
        }
    }
    params.pattern.validate();
    params.chain.validate();
    return params;
}

DetectionParams detection_params_from_file(const std::string& path) {
    return detection_params_from_kv(parse_kv_file(path));
}

}  // namespace mixscan
