#pragma once

#include <map>
#include <string>
#include <vector>

#include "ndc/sweep.hpp"

namespace ndcsim {

// Configs are flat key = value text files: blank lines and #-comment lines are
// skipped, keys are case-insensitive, unknown keys are rejected.
std::map<std::string, std::string> parse_key_values(const std::string& path);

// Comma-separated scalars and a:step:b inclusive ranges; "inf" is accepted.
std::vector<double> parse_ebn0_list(const std::string& text);

struct AnalyzeConfig {
    std::vector<std::string> channels;
    std::string channel_file;
    int m = 16;
    std::size_t n = 2048;
    std::vector<double> ebn0_points;  // empty selects an automatic integer grid
    bool with_simulation = false;
    std::uint64_t min_bits = 1'000'000;
    std::uint64_t min_errors = 100;
    std::uint64_t frame_cap = 100'000;
};

ndc::SweepConfig simulate_config_from(const std::map<std::string, std::string>& kv);
AnalyzeConfig analyze_config_from(const std::map<std::string, std::string>& kv);

double parse_double(const std::string& key, const std::string& value);
std::uint64_t parse_u64(const std::string& key, const std::string& value);
bool parse_bool(const std::string& key, const std::string& value);

}  // namespace ndcsim
