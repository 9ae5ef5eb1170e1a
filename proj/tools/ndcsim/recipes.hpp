#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndc/channel.hpp"
#include "ndc/sweep.hpp"

namespace ndcsim {

struct AnalyticJob {
    std::string channel;
    int m = 16;
    std::size_t n = 2048;
    std::vector<double> grid;
};

// A bundled experiment: analytic curves plus Monte Carlo sweeps sharing one
// output file.
struct Recipe {
    std::vector<AnalyticJob> analytic;
    std::vector<ndc::SweepConfig> sweeps;
};

bool is_analyze_recipe(const std::string& name);
bool is_simulate_recipe(const std::string& name);

Recipe expand_recipe(const std::string& name, std::uint64_t seed, unsigned workers);

// Integer Eb/N0 grid (dB) covering the region where the analytic curve falls
// between 1e-1 and 1e-4.
std::vector<double> auto_grid(const ndc::ChannelMatrix& h, int m, std::size_t n);

}  // namespace ndcsim
