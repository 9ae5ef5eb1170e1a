#include "recipes.hpp"

#include <stdexcept>

#include "ndc/analysis.hpp"

namespace ndcsim {

namespace {

ndc::SweepConfig base_sweep(const std::string& channel, std::uint64_t seed,
                            unsigned workers, const std::vector<double>& grid) {
    ndc::SweepConfig cfg;
    cfg.channel_name = channel;
    cfg.channel = ndc::preset_channel(channel).gains();
    cfg.ebn0_points = grid;
    cfg.seed = seed;
    cfg.workers = workers;
    return cfg;
}

Recipe ideal_channel_figure(const std::vector<std::string>& channels,
                            std::uint64_t seed, unsigned workers) {
    Recipe r;
    for (const auto& name : channels) {
        const auto& h = ndc::preset_channel(name);
        AnalyticJob a;
        a.channel = name;
        a.m = 16;
        a.grid = auto_grid(h, 16, 2048);
        r.analytic.push_back(a);

        ndc::SweepConfig cfg = base_sweep(name, seed, workers, a.grid);
        cfg.scheme = ndc::Scheme::Ndc;
        cfg.m = 16;
        cfg.reconstruction = ndc::Reconstruction::SignSelect;
        r.sweeps.push_back(std::move(cfg));
    }
    return r;
}

Recipe practical_channel_figure(const std::string& channel, std::uint64_t seed,
                                unsigned workers) {
    const auto& h = ndc::preset_channel(channel);
    const auto g8 = auto_grid(h, 8, 2048);
    const auto g16 = auto_grid(h, 16, 2048);
    if (g8.empty() || g16.empty())
        throw std::runtime_error("no workable Eb/N0 window for " + channel);
    std::vector<double> grid;
    for (double v = g8.front() - 1.0; v <= g16.back() + 14.0 + 1e-9; v += 2.0)
        grid.push_back(v);

    Recipe r;
    auto add = [&](ndc::Scheme scheme, int m, double bias_db,
                   ndc::Reconstruction recon) {
        ndc::SweepConfig cfg = base_sweep(channel, seed, workers, grid);
        cfg.scheme = scheme;
        cfg.m = m;
        cfg.bias_db = bias_db;
        cfg.reconstruction = recon;
        cfg.frame_cap = 2000;  // keeps the deep tail bounded; such points are flagged
        r.sweeps.push_back(std::move(cfg));
    };
    add(ndc::Scheme::Ndc, 8, 7.0, ndc::Reconstruction::SignSelect);
    add(ndc::Scheme::Ndc, 16, 7.0, ndc::Reconstruction::SignSelect);
    add(ndc::Scheme::DcoOsm, 4, 5.0, ndc::Reconstruction::SignSelect);
    add(ndc::Scheme::DcoOsm, 4, 7.0, ndc::Reconstruction::SignSelect);
    add(ndc::Scheme::DcoOsm, 8, 5.0, ndc::Reconstruction::SignSelect);
    add(ndc::Scheme::DcoOsm, 8, 7.0, ndc::Reconstruction::SignSelect);
    add(ndc::Scheme::AcoOsm, 32, 7.0, ndc::Reconstruction::SignSelect);
    add(ndc::Scheme::AcoOsm, 128, 7.0, ndc::Reconstruction::SignSelect);
    return r;
}

}  // namespace

bool is_analyze_recipe(const std::string& name) {
    return name == "fig3" || name == "fig4";
}

bool is_simulate_recipe(const std::string& name) {
    return name == "fig5" || name == "fig6" || name == "fig7" || name == "fig8";
}

Recipe expand_recipe(const std::string& name, std::uint64_t seed, unsigned workers) {
    if (name == "fig3") return ideal_channel_figure({"H1", "H2", "H3", "H4"}, seed, workers);
    if (name == "fig4") return ideal_channel_figure({"H5", "H6", "H7", "H8"}, seed, workers);
    if (name == "fig5") return practical_channel_figure("HPrac1", seed, workers);
    if (name == "fig6") return practical_channel_figure("HPrac2", seed, workers);
    if (name == "fig7") return practical_channel_figure("HPrac3", seed, workers);
    if (name == "fig8") return practical_channel_figure("HPrac4", seed, workers);
    throw std::invalid_argument("unknown recipe: " + name);
}

std::vector<double> auto_grid(const ndc::ChannelMatrix& h, int m, std::size_t n) {
    std::vector<double> grid;
    for (int g = 0; g <= 200; ++g) {
        const double ber = ndc::ndc_analytic_ber(h, m, n, 2, double(g));
        if (ber <= 1e-1 + 1e-12 && ber >= 1e-4 - 1e-12) grid.push_back(double(g));
        if (ber < 1e-4 - 1e-12 && !grid.empty()) break;
    }
    return grid;
}

}  // namespace ndcsim
