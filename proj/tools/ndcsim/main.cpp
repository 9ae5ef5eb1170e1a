#include <cstdlib>
#include <fstream>
#include <ctime>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "recipes.hpp"

#include "ndc/analysis.hpp"
#include "ndc/channel.hpp"
#include "ndc/csvio.hpp"
#include "ndc/sweep.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    std::string config_path;
    std::string recipe;
    std::string out_dir = ".";
    std::string format = "csv";
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

unsigned env_workers() {
    const char* v = std::getenv("NDCSIM_WORKERS");
    if (!v || !*v) return 0;
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (end == v || *end != '\0')
        throw std::invalid_argument("NDCSIM_WORKERS must be a nonnegative integer");
    return unsigned(n);
}

std::string iso_now() {
    char buf[32];
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

std::string describe_sweep(const ndc::SweepConfig& cfg) {
    std::ostringstream out;
    out << ndc::scheme_name(cfg.scheme) << ' ' << cfg.channel_name << " m=" << cfg.m
        << " n=" << cfg.n;
    if (cfg.scheme == ndc::Scheme::DcoOsm) out << " bias=" << cfg.bias_db;
    if (cfg.scheme == ndc::Scheme::Ndc)
        out << ' ' << ndc::reconstruction_name(cfg.reconstruction);
    out << " points=";
    for (double p : cfg.ebn0_points) out << p << ';';
    out << " min_bits=" << cfg.min_bits << " min_errors=" << cfg.min_errors
        << " frame_cap=" << cfg.frame_cap;
    return out.str();
}

json row_to_json(const ndc::ResultRow& r) {
    json j;
    j["source"] = r.source;
    j["scheme"] = ndc::scheme_name(r.scheme);
    j["channel"] = r.channel;
    j["m"] = r.m;
    j["bias_db"] = r.has_bias ? json(r.bias_db) : json(nullptr);
    j["reconstruction"] =
        r.has_reconstruction ? json(ndc::reconstruction_name(r.reconstruction))
                             : json(nullptr);
    j["ebn0_db"] = r.ebn0_db;
    j["bits"] = r.bits;
    j["errors"] = r.errors;
    j["ber"] = r.ber;
    j["low_confidence"] = r.low_confidence;
    return j;
}

std::string results_path(const CommonOpts& opts, const std::string& base) {
    return opts.out_dir + "/" + base + (opts.format == "json" ? ".json" : ".csv");
}

void write_rows(const CommonOpts& opts, const std::string& base,
                const std::vector<ndc::ResultRow>& rows) {
    const std::string path = results_path(opts, base);
    if (opts.format == "json") {
        json j;
        j["rows"] = json::array();
        for (const auto& r : rows) j["rows"].push_back(row_to_json(r));
        ndc::atomic_write_text(path, j.dump(2) + "\n");
    } else {
        ndc::write_csv(path, rows);
    }
    std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
}

void write_manifest(const CommonOpts& opts, const std::string& base,
                    const std::string& command, const std::string& canonical,
                    const std::string& started, bool low_confidence,
                    const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["recipe"] = opts.recipe.empty() ? json(nullptr) : json(opts.recipe);
    m["config"] = opts.config_path.empty() ? json(nullptr) : json(opts.config_path);
    m["config_digest"] = hex64(fnv1a(canonical));
    m["seed"] = opts.seed;
    m["workers"] = opts.workers;
    m["format"] = opts.format;
    m["version"] = NDCSIM_VERSION;
    m["started"] = started;
    m["finished"] = iso_now();
    m["outputs"] = outputs;
    m["low_confidence"] = low_confidence;
    ndc::atomic_write_text(opts.out_dir + "/" + base + ".manifest.json",
                           m.dump(2) + "\n");
}

std::string base_name(const CommonOpts& opts, const std::string& fallback) {
    if (!opts.recipe.empty()) return opts.recipe;
    if (!opts.config_path.empty()) {
        auto base = opts.config_path.substr(opts.config_path.find_last_of('/') + 1);
        const auto dot = base.find_last_of('.');
        return dot == std::string::npos ? base : base.substr(0, dot);
    }
    return fallback;
}

void resolve_workers(CommonOpts& opts, bool flag_given) {
    if (!flag_given) opts.workers = env_workers();
}

std::vector<ndc::ResultRow> analytic_rows_for(const std::string& channel,
                                              const ndc::Mat& gains, int m,
                                              std::size_t n,
                                              const std::vector<double>& grid) {
    const ndc::ChannelMatrix h(gains);
    std::vector<ndc::ResultRow> rows;
    for (double g : grid)
        rows.push_back(ndc::analytic_row(channel, m, g, ndc::ndc_analytic_ber(h, m, n, 2, g)));
    return rows;
}

int finish(const CommonOpts& opts, const std::string& base, const std::string& command,
           const std::string& canonical, const std::string& started,
           const std::vector<ndc::ResultRow>& rows) {
    bool low = false;
    for (const auto& r : rows) low = low || r.low_confidence;
    write_rows(opts, base, rows);
    write_manifest(opts, base, command, canonical, started, low,
                   {results_path(opts, base)});
    return low ? 4 : 0;
}

int cmd_simulate(CommonOpts opts) {
    const std::string started = iso_now();
    std::vector<ndc::SweepConfig> sweeps;
    std::vector<ndc::ResultRow> rows;
    std::string canonical = "simulate\n";
    if (!opts.recipe.empty()) {
        if (!ndcsim::is_simulate_recipe(opts.recipe))
            throw std::invalid_argument("simulate accepts recipes fig5..fig8");
        auto recipe = ndcsim::expand_recipe(opts.recipe, opts.seed, opts.workers);
        sweeps = std::move(recipe.sweeps);
    } else if (!opts.config_path.empty()) {
        auto cfg = ndcsim::simulate_config_from(ndcsim::parse_key_values(opts.config_path));
        cfg.seed = opts.seed;
        cfg.workers = opts.workers;
        sweeps.push_back(std::move(cfg));
    } else {
        throw std::invalid_argument("simulate needs --config or --recipe");
    }
    for (const auto& cfg : sweeps) canonical += describe_sweep(cfg) + "\n";
    for (const auto& cfg : sweeps) {
        const ndc::BerCurve curve = ndc::run_sweep(cfg);
        const auto curve_rows = ndc::rows_from_curve(curve);
        rows.insert(rows.end(), curve_rows.begin(), curve_rows.end());
        std::cout << ndc::scheme_name(cfg.scheme) << " " << cfg.channel_name
                  << " M=" << cfg.m << ": " << curve.points.size() << " points done\n";
    }
    return finish(opts, base_name(opts, "simulate"), "simulate", canonical, started, rows);
}

int cmd_analyze(CommonOpts opts) {
    const std::string started = iso_now();
    std::vector<ndc::ResultRow> rows;
    std::string canonical = "analyze\n";
    if (!opts.recipe.empty()) {
        if (!ndcsim::is_analyze_recipe(opts.recipe))
            throw std::invalid_argument("analyze accepts recipes fig3 and fig4");
        auto recipe = ndcsim::expand_recipe(opts.recipe, opts.seed, opts.workers);
        for (const auto& a : recipe.analytic) {
            canonical += "analytic " + a.channel + " m=" + std::to_string(a.m) + "\n";
            const auto r = analytic_rows_for(a.channel,
                                             ndc::preset_channel(a.channel).gains(),
                                             a.m, a.n, a.grid);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        for (const auto& cfg : recipe.sweeps) canonical += describe_sweep(cfg) + "\n";
        for (const auto& cfg : recipe.sweeps) {
            const auto r = ndc::rows_from_curve(ndc::run_sweep(cfg));
            rows.insert(rows.end(), r.begin(), r.end());
            std::cout << cfg.channel_name << " simulation done\n";
        }
    } else if (!opts.config_path.empty()) {
        const auto cfg =
            ndcsim::analyze_config_from(ndcsim::parse_key_values(opts.config_path));
        struct Entry {
            std::string name;
            ndc::Mat gains;
        };
        std::vector<Entry> entries;
        if (!cfg.channel_file.empty()) {
            auto base =
                cfg.channel_file.substr(cfg.channel_file.find_last_of('/') + 1);
            entries.push_back(
                {base.substr(0, base.find_last_of('.')),
                 ndc::read_matrix_text(cfg.channel_file)});
        } else {
            for (const auto& name : cfg.channels)
                entries.push_back({name, ndc::preset_channel(name).gains()});
        }
        for (const auto& e : entries) {
            const ndc::ChannelMatrix h(e.gains);
            const std::vector<double> grid = cfg.ebn0_points.empty()
                                                 ? ndcsim::auto_grid(h, cfg.m, cfg.n)
                                                 : cfg.ebn0_points;
            canonical += "analytic " + e.name + " m=" + std::to_string(cfg.m) + "\n";
            const auto r = analytic_rows_for(e.name, e.gains, cfg.m, cfg.n, grid);
            rows.insert(rows.end(), r.begin(), r.end());
            if (cfg.with_simulation) {
                ndc::SweepConfig sim;
                sim.scheme = ndc::Scheme::Ndc;
                sim.channel_name = e.name;
                sim.channel = e.gains;
                sim.m = cfg.m;
                sim.n = cfg.n;
                sim.ebn0_points = grid;
                sim.min_bits = cfg.min_bits;
                sim.min_errors = cfg.min_errors;
                sim.frame_cap = cfg.frame_cap;
                sim.seed = opts.seed;
                sim.workers = opts.workers;
                canonical += describe_sweep(sim) + "\n";
                const auto sr = ndc::rows_from_curve(ndc::run_sweep(sim));
                rows.insert(rows.end(), sr.begin(), sr.end());
            }
        }
    } else {
        throw std::invalid_argument("analyze needs --config or --recipe");
    }
    return finish(opts, base_name(opts, "analyze"), "analyze", canonical, started, rows);
}

int cmd_se_table(CommonOpts opts) {
    const std::string started = iso_now();
    std::ostringstream out;
    out << "se,ndc_m,dco_m,aco_m\n";
    for (double se : {3.5, 4.0, 4.5, 5.0, 5.5}) {
        const auto orders = ndc::matched_constellations(se, 2);
        char se_buf[16];
        std::snprintf(se_buf, sizeof se_buf, "%g", se);
        out << se_buf << ',' << orders.ndc << ',' << orders.dco << ',' << orders.aco
            << '\n';
    }
    const std::string text = out.str();
    std::cout << text;
    const std::string path = opts.out_dir + "/se_table.csv";
    ndc::atomic_write_text(path, text);
    write_manifest(opts, "se_table", "se-table", "se-table\n" + text, started, false,
                   {path});
    return 0;
}

int cmd_channel_gain(CommonOpts opts, const std::string& geometry_path) {
    const std::string started = iso_now();
    std::ifstream in(geometry_path);
    if (!in) throw std::invalid_argument("cannot open geometry file: " + geometry_path);
    std::map<std::pair<int, int>, double> gains;
    int max_tx = 0, max_rx = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        int tx = 0, rx = 0;
        ndc::LinkGeometry g;
        try {
            tx = std::stoi(first);
        } catch (const std::exception&) {
            throw std::invalid_argument("geometry line " + std::to_string(line_no) +
                                        ": bad transmitter index");
        }
        if (!(ls >> rx >> g.semiangle_deg >> g.detector_area >> g.distance >>
              g.radiant_angle_deg >> g.incident_angle_deg >> g.filter_gain >>
              g.concentrator_gain >> g.fov_deg))
            throw std::invalid_argument(
                "geometry line " + std::to_string(line_no) +
                ": expected tx rx semiangle area distance radiant incident filter "
                "concentrator fov");
        if (tx < 1 || rx < 1)
            throw std::invalid_argument("geometry line " + std::to_string(line_no) +
                                        ": indices are 1-based");
        if (gains.count({rx, tx}))
            throw std::invalid_argument("geometry line " + std::to_string(line_no) +
                                        ": duplicate (tx, rx) pair");
        gains[{rx, tx}] = ndc::los_gain(g);
        max_tx = std::max(max_tx, tx);
        max_rx = std::max(max_rx, rx);
    }
    if (gains.empty()) throw std::invalid_argument("geometry file has no links");
    for (int r = 1; r <= max_rx; ++r)
        for (int t = 1; t <= max_tx; ++t)
            if (!gains.count({r, t}))
                throw std::invalid_argument("geometry is missing the (tx=" +
                                            std::to_string(t) + ", rx=" +
                                            std::to_string(r) + ") link");
    ndc::Mat h(std::size_t(max_rx), std::size_t(max_tx));
    for (const auto& [key, v] : gains) h(std::size_t(key.first - 1), std::size_t(key.second - 1)) = v;
    const std::string path = opts.out_dir + "/channel_gain.txt";
    ndc::write_matrix_text(path, h);
    for (std::size_t r = 0; r < h.rows(); ++r) {
        for (std::size_t c = 0; c < h.cols(); ++c)
            std::cout << (c ? " " : "") << h(r, c);
        std::cout << '\n';
    }
    write_manifest(opts, "channel_gain", "channel-gain",
                   "channel-gain\n" + geometry_path, started, false, {path});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optical MIMO OFDM link simulator and analytic BER toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string geometry_path;
    bool workers_given = false;

    auto add_common = [&](CLI::App* cmd, bool with_inputs) {
        if (with_inputs) {
            cmd->add_option("--config", opts.config_path, "key = value config file");
            cmd->add_option("--recipe", opts.recipe, "bundled experiment name");
        }
        cmd->add_option("--seed", opts.seed, "master seed");
        cmd->add_option("--out-dir", opts.out_dir, "output directory");
        cmd->add_option("--workers", opts.workers, "worker thread count (0 = auto)")
            ->each([&](const std::string&) { workers_given = true; });
        cmd->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run Monte Carlo BER sweeps");
    add_common(simulate, true);
    CLI::App* analyze = app.add_subcommand("analyze", "run the analytic BER pipeline");
    add_common(analyze, true);
    CLI::App* se_table =
        app.add_subcommand("se-table", "matched constellation order table");
    add_common(se_table, false);
    CLI::App* channel_gain =
        app.add_subcommand("channel-gain", "LOS gain matrix from link geometry");
    add_common(channel_gain, false);
    channel_gain->add_option("--geometry", geometry_path, "link geometry file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        resolve_workers(opts, workers_given);
        if (simulate->parsed()) return cmd_simulate(opts);
        if (analyze->parsed()) return cmd_analyze(opts);
        if (se_table->parsed()) return cmd_se_table(opts);
        if (channel_gain->parsed()) return cmd_channel_gain(opts, geometry_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
