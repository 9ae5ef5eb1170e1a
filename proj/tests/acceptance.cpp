#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "ndc/analysis.hpp"
#include "ndc/channel.hpp"
#include "ndc/constellation.hpp"
#include "ndc/mat.hpp"
#include "ndc/modulation.hpp"
#include "ndc/normal.hpp"
#include "ndc/ofdm.hpp"
#include "ndc/receiver.hpp"
#include "ndc/rng.hpp"
#include "ndc/scheme.hpp"
#include "ndc/sweep.hpp"

using namespace ndc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// Interpolates, on a log-BER scale, the axis value where a decreasing curve
// crosses the target. Points with zero errors carry no BER information and are
// skipped. Returns NaN when the curve never brackets the target.
double crossing_gamma(const std::vector<std::pair<double, double>>& pts, double target) {
    std::vector<std::pair<double, double>> usable;
    for (const auto& p : pts)
        if (p.second > 0.0) usable.push_back(p);
    for (std::size_t i = 0; i + 1 < usable.size(); ++i) {
        const auto [g0, b0] = usable[i];
        const auto [g1, b1] = usable[i + 1];
        if (b0 >= target && target >= b1) {
            if (b0 == b1) return 0.5 * (g0 + g1);
            const double t =
                (std::log(target) - std::log(b0)) / (std::log(b1) - std::log(b0));
            return g0 + t * (g1 - g0);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> analytic_window(const ChannelMatrix& h, int m, double lo, double hi,
                                    int scan_limit) {
    std::vector<double> grid;
    bool seen = false;
    for (int g = 0; g <= scan_limit; ++g) {
        const double b = ndc_analytic_ber(h, m, 2048, 2, double(g));
        const bool in = b >= lo * (1.0 - 1e-9) && b <= hi * (1.0 + 1e-9);
        if (in) {
            grid.push_back(double(g));
            seen = true;
        } else if (seen) {
            break;
        }
    }
    return grid;
}

SweepConfig base_sweep(Scheme scheme, const std::string& channel, int m) {
    SweepConfig cfg;
    cfg.scheme = scheme;
    cfg.channel_name = channel;
    cfg.m = m;
    cfg.n = 2048;
    cfg.seed = 1;
    cfg.workers = 0;
    return cfg;
}

Outcome criterion_1() {
    const Timer t;
    const double targets[] = {3.5, 4.0, 4.5, 5.0, 5.5};
    const int expect[][3] = {{128, 64, 8192},
                             {256, 128, 32768},
                             {512, 256, 131072},
                             {1024, 512, 524288},
                             {2048, 1024, 2097152}};
    int good = 0;
    for (int i = 0; i < 5; ++i) {
        const auto m = matched_constellations(targets[i], 2);
        good += m.ndc == expect[i][0];
        good += m.dco == expect[i][1];
        good += m.aco == expect[i][2];
    }
    const double el = t.seconds();
    Outcome out;
    out.pass = good == 15 && el < 1.0;
    out.detail = fmt("%d/15 table cells exact in %.3f s", good, el);
    return out;
}

Outcome criterion_2() {
    const auto lo = matched_constellations(1.5, 2);
    const auto hi = matched_constellations(2.0, 2);
    bool ok = lo.ndc == 8 && lo.dco == 4 && lo.aco == 32 && hi.ndc == 16 &&
              hi.dco == 8 && hi.aco == 128;
    for (double se : {1.5, 2.0}) {
        const auto m = matched_constellations(se, 2);
        ok = ok &&
             std::fabs(spectral_efficiency(Scheme::Ndc, m.ndc, 2, 8, true) - se) < 1e-12 &&
             std::fabs(spectral_efficiency(Scheme::DcoOsm, m.dco, 2, 8, true) - se) < 1e-12 &&
             std::fabs(spectral_efficiency(Scheme::AcoOsm, m.aco, 2, 8, true) - se) < 1e-12;
    }
    Outcome out;
    out.pass = ok;
    out.detail = fmt("orders (%d,%d,%d) at 1.5 and (%d,%d,%d) at 2.0 bits/s/Hz",
                     lo.ndc, lo.dco, lo.aco, hi.ndc, hi.dco, hi.aco);
    return out;
}

Outcome criterion_3() {
    const Timer t;
    const double inf = std::numeric_limits<double>::infinity();
    std::uint64_t total_errors = 0;
    std::uint64_t min_bits_seen = std::numeric_limits<std::uint64_t>::max();
    int combos = 0;
    std::string first_fail;
    for (const auto& [name, h] : preset_channels()) {
        struct Case {
            Scheme scheme;
            int m;
            double bias;
        };
        const Case cases[] = {{Scheme::Ndc, 16, 0.0},
                              {Scheme::AcoOsm, 128, 0.0},
                              {Scheme::DcoOsm, 8, 13.0}};
        for (const auto& cs : cases) {
            SweepConfig cfg = base_sweep(cs.scheme, name, cs.m);
            cfg.bias_db = cs.bias;
            cfg.min_bits = 1'000'000;
            cfg.min_errors = 1;
            cfg.frame_cap = 245;
            cfg.ebn0_points = {inf};
            const BerPoint p = run_point(cfg, inf);
            ++combos;
            total_errors += p.errors;
            min_bits_seen = std::min(min_bits_seen, p.bits);
            if (p.errors != 0 && first_fail.empty())
                first_fail = fmt("%s %s: %llu errors", name.c_str(),
                                 scheme_name(cs.scheme).c_str(),
                                 (unsigned long long)p.errors);
        }
    }
    const double el = t.seconds();
    Outcome out;
    out.pass = total_errors == 0 && min_bits_seen >= 1'000'000 && el < 60.0;
    if (out.pass)
        out.detail = fmt("0 errors across %d channel/scheme combos, >= %llu bits each, %.1f s",
                         combos, (unsigned long long)min_bits_seen, el);
    else
        out.detail = fmt("%s; min bits %llu; %.1f s",
                         first_fail.empty() ? "bit count or time budget missed"
                                            : first_fail.c_str(),
                         (unsigned long long)min_bits_seen, el);
    return out;
}

Outcome criterion_4() {
    const Timer t;
    double worst_rel = 0.0, worst_gap = 0.0;
    std::string worst_at = "none";
    bool all_ok = true;
    int points = 0;
    for (const char* name : {"H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8"}) {
        const ChannelMatrix& h = preset_channel(name);
        const std::vector<double> grid = analytic_window(h, 16, 1e-4, 1e-1, 200);
        if (grid.empty()) {
            all_ok = false;
            worst_at = fmt("%s: empty grid", name);
            continue;
        }
        SweepConfig cfg = base_sweep(Scheme::Ndc, name, 16);
        cfg.reconstruction = Reconstruction::SignSelect;
        cfg.ebn0_points = grid;
        cfg.min_bits = 1'000'000;
        cfg.min_errors = 400;
        cfg.frame_cap = 5000;
        const BerCurve curve = run_sweep(cfg);

        std::vector<std::pair<double, double>> fine;
        for (double g = grid.front() - 2.0; g <= grid.back() + 2.0; g += 0.125)
            fine.emplace_back(g, ndc_analytic_ber(h, 16, 2048, 2, g));

        for (const auto& p : curve.points) {
            ++points;
            const double ana = ndc_analytic_ber(h, 16, 2048, 2, p.ebn0_db);
            const double rel = std::fabs(p.ber - ana) / ana;
            const double cross = crossing_gamma(fine, p.ber);
            const double gap =
                std::isnan(cross) ? std::numeric_limits<double>::infinity()
                                  : std::fabs(p.ebn0_db - cross);
            const bool ok = rel <= 0.25 || gap <= 0.5;
            if (!ok) {
                all_ok = false;
                worst_at = fmt("%s at %g dB: rel %.0f%%, gap %.2f dB", name, p.ebn0_db,
                               100.0 * rel, gap);
            }
            if (rel > worst_rel) worst_rel = rel;
            if (!std::isinf(gap) && gap > worst_gap) worst_gap = gap;
        }
    }
    Outcome out;
    out.pass = all_ok;
    if (all_ok)
        out.detail = fmt("%d points over 8 channels, worst rel %.1f%%, worst gap %.2f dB, %.0f s",
                         points, 100.0 * worst_rel, worst_gap, t.seconds());
    else
        out.detail = fmt("%s (%.0f s)", worst_at.c_str(), t.seconds());
    return out;
}

Outcome criterion_5() {
    const Timer t;
    bool ok = true;
    std::string note;
    double gap_1e4 = 0.0;
    for (const char* name : {"HPrac3", "HPrac4"}) {
        const ChannelMatrix& h = preset_channel(name);
        const std::vector<double> window = analytic_window(h, 16, 1e-4, 1e-1, 250);
        if (window.empty()) return {false, fmt("%s: no analytic window found", name)};
        std::vector<double> grid;
        for (double g = window.front() - 2.0; g <= window.back() + 14.0; g += 1.0)
            grid.push_back(g);

        auto run_curve = [&](Scheme scheme, int m, double bias) {
            SweepConfig cfg = base_sweep(scheme, name, m);
            cfg.bias_db = bias;
            cfg.ebn0_points = grid;
            cfg.min_bits = 1'000'000;
            cfg.min_errors = 400;
            cfg.frame_cap = 1500;
            std::vector<std::pair<double, double>> pts;
            for (const auto& p : run_sweep(cfg).points)
                pts.emplace_back(p.ebn0_db, p.errors > 0 ? p.ber : 0.0);
            return pts;
        };
        const auto ndc16 = run_curve(Scheme::Ndc, 16, 0.0);
        const auto dco5 = run_curve(Scheme::DcoOsm, 8, 5.0);
        const auto dco7 = run_curve(Scheme::DcoOsm, 8, 7.0);
        const auto aco = run_curve(Scheme::AcoOsm, 128, 0.0);

        const double r_ndc = crossing_gamma(ndc16, 1e-3);
        const double r_d5 = crossing_gamma(dco5, 1e-3);
        const double r_d7 = crossing_gamma(dco7, 1e-3);
        const double r_aco = crossing_gamma(aco, 1e-3);
        if (std::isnan(r_ndc) || std::isnan(r_d5) || std::isnan(r_d7) || std::isnan(r_aco))
            return {false, fmt("%s: a curve never crosses 1e-3", name)};
        const bool order_ok = r_ndc < r_d5 && r_ndc < r_d7 && r_ndc < r_aco &&
                              r_d7 >= r_d5 - 0.5;
        if (!order_ok) ok = false;
        note += fmt("%s@1e-3: ndc %.1f, dco5 %.1f, dco7 %.1f, aco %.1f dB; ", name,
                    r_ndc, r_d5, r_d7, r_aco);

        if (std::strcmp(name, "HPrac3") == 0) {
            const double n4 = crossing_gamma(ndc16, 1e-4);
            const double d4 = crossing_gamma(dco7, 1e-4);
            if (std::isnan(n4) || std::isnan(d4)) return {false, "HPrac3: no 1e-4 crossing"};
            gap_1e4 = d4 - n4;
            if (gap_1e4 < 6.5 || gap_1e4 > 11.5) ok = false;
        }
    }
    Outcome out;
    out.pass = ok;
    out.detail = note + fmt("HPrac3 gap at 1e-4: %.2f dB (band 6.5..11.5); %.0f s",
                            gap_1e4, t.seconds());
    return out;
}

Outcome criterion_6() {
    const Timer t;
    // Bipolar reference receiver: same constellation, all the energy of both
    // LEDs in one branch of noise.
    auto baseline = [](double g) {
        return theoretical_ber(16, std::pow(10.0, g / 10.0) / 2.0);
    };
    double lo = 5.0, hi = 25.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (baseline(mid) > 1e-3 ? lo : hi) = mid;
    }
    const double base_req = 0.5 * (lo + hi);

    std::vector<double> grid;
    for (double g = 10.0; g <= 18.0; g += 1.0) grid.push_back(g);
    auto run_curve = [&](Reconstruction rec) {
        SweepConfig cfg = base_sweep(Scheme::Ndc, "H1", 16);
        cfg.reconstruction = rec;
        cfg.ebn0_points = grid;
        cfg.min_bits = 1'000'000;
        cfg.min_errors = 400;
        cfg.frame_cap = 5000;
        return run_sweep(cfg);
    };
    const BerCurve sub = run_curve(Reconstruction::Subtract);
    const BerCurve sel = run_curve(Reconstruction::SignSelect);

    std::vector<std::pair<double, double>> sub_pts;
    for (const auto& p : sub.points) sub_pts.emplace_back(p.ebn0_db, p.ber);
    const double sub_req = crossing_gamma(sub_pts, 1e-3);
    const double gap = sub_req - base_req;

    bool select_better = true;
    std::string bad;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!(sel.points[i].ber < sub.points[i].ber)) {
            select_better = false;
            bad = fmt(" (sign-select not ahead at %g dB)", grid[i]);
        }

    Outcome out;
    out.pass = !std::isnan(gap) && gap >= 2.5 && gap <= 3.5 && select_better;
    out.detail = fmt("subtract needs %.2f dB, reference %.2f dB, gap %.2f dB%s; %.0f s",
                     sub_req, base_req, gap, bad.c_str(), t.seconds());
    return out;
}

struct OracleAverages {
    double d_c = 0.0;
    double alpha_c = 0.0;
    double y_c = 0.0;
    double vbar_c = 0.0;
};

// Stratified sampling over the signal prior with a direct simulation of the
// detector inside each stratum. The conditional-mean square is debiased by
// the within-stratum sampling variance.
OracleAverages sampling_oracle(const Mat& c, double sigma_n, std::uint32_t channel_id,
                               int strata, int draws_per_stratum) {
    RandomStream signal(2024, stream_purpose::oracle_signal, channel_id, 0);
    double acc_dc = 0.0, acc_ic1 = 0.0, acc_ic2 = 0.0, acc_vc = 0.0;
    for (int j = 0; j < strata; ++j) {
        double p = (double(j) + signal.next_unit()) / double(strata);
        if (p >= 1.0) p = 1.0 - 1e-12;
        const double s = inverse_q(1.0 - p);
        const double a = std::fabs(s);
        const bool led1 = s >= 0.0;

        RandomStream noise(2024, stream_purpose::oracle_noise, channel_id,
                           std::uint32_t(j + 1));
        long nc = 0;
        double sum = 0.0, sum2 = 0.0;
        for (int k = 0; k < draws_per_stratum; ++k) {
            const double n1 = sigma_n * noise.next_gaussian();
            const double n2 = sigma_n * noise.next_gaussian();
            const double g1 = (led1 ? a : 0.0) + c(0, 0) * n1 + c(0, 1) * n2;
            const double g2 = (led1 ? 0.0 : a) + c(1, 0) * n1 + c(1, 1) * n2;
            const bool picked1 = g1 >= g2;
            if (picked1 != led1) continue;
            const double xhat = picked1 ? g1 : -g2;
            ++nc;
            sum += xhat;
            sum2 += xhat * xhat;
        }
        if (nc == 0) continue;
        const double pc = double(nc) / double(draws_per_stratum);
        const double mean = sum / double(nc);
        const double var = nc > 1 ? (sum2 - double(nc) * mean * mean) / double(nc - 1) : 0.0;
        acc_dc += pc;
        acc_ic1 += pc * s * mean;
        acc_ic2 += pc * (mean * mean - var / double(nc));
        acc_vc += pc * var;
    }
    OracleAverages out;
    out.d_c = acc_dc / strata;
    const double ic1 = acc_ic1 / strata;
    const double ic2 = acc_ic2 / strata;
    const double vc = acc_vc / strata;
    out.alpha_c = ic1 / out.d_c;
    out.y_c = ic2 / out.d_c - out.alpha_c * out.alpha_c;
    out.vbar_c = vc / out.d_c;
    return out;
}

Outcome criterion_7() {
    const Timer t;
    const auto stats = SignalStats::from_sigma(1.0, 16, 2048, 2);
    const char* names[] = {"H1", "H4", "H8"};
    bool ok = true;
    double worst = 0.0;
    std::string worst_at = "none";
    for (std::uint32_t i = 0; i < 3; ++i) {
        const Mat& c = preset_channel(names[i]).inverse();
        const OracleAverages orc = sampling_oracle(c, 0.1, i, 4000, 1000);
        const BussgangResult ana = bussgang_decomposition(c, 0.1, stats);
        const struct {
            const char* what;
            double a, o;
        } checks[] = {{"d_c", ana.d_c, orc.d_c},
                      {"alpha_c", ana.alpha_c, orc.alpha_c},
                      {"y_c", ana.y_c, orc.y_c},
                      {"v_c", ana.vbar_c, orc.vbar_c}};
        for (const auto& ch : checks) {
            const double rel = std::fabs(ch.a - ch.o) / std::fabs(ch.o);
            if (rel > worst) {
                worst = rel;
                worst_at = fmt("%s %s", names[i], ch.what);
            }
            if (rel > 0.01) ok = false;
        }
    }
    Outcome out;
    out.pass = ok;
    out.detail = fmt("worst deviation %.2f%% (%s) across 3 channels x 4 quantities, %.1f s",
                     100.0 * worst, worst_at.c_str(), t.seconds());
    return out;
}

Outcome criterion_8() {
    const Timer t;
    std::string fails;

    {  // sign split is lossless and one-hot
        RandomStream rs(17, 1, 0, 0);
        TimeFrame x(512);
        for (auto& v : x) v = rs.next_gaussian();
        const SmFrame f = modulate_ndc(x);
        for (std::size_t k = 0; k < x.size(); ++k)
            if (f.rows[0][k] * f.rows[1][k] != 0.0 ||
                f.rows[0][k] - f.rows[1][k] != x[k]) {
                fails += "sign-split; ";
                break;
            }
    }

    {  // clipping halves the odd bins
        const auto c = make_qam(4);
        RandomStream rs(19, 1, 0, 0);
        std::vector<std::complex<double>> syms(8);
        for (auto& z : syms) z = c.points[rs.next_u32() % 4];
        const auto spec = forward_transform(modulate_aco(syms, 32));
        for (std::size_t i = 0; i < syms.size(); ++i)
            if (std::abs(spec[2 * i + 1] - 0.5 * syms[i]) > 1e-9) {
                fails += "odd-bin halving; ";
                break;
            }
    }

    {  // noiseless round trips through a coupled channel
        const std::size_t n = 64;
        const auto c = make_qam(16);
        RandomStream rs(23, 1, 0, 0);
        std::vector<int> bits(31 * 4);
        for (auto& b : bits) b = rs.next_bit();
        const auto syms = qam_map(bits, c);
        const TimeFrame x = inverse_transform(build_spectral_frame(syms, n));
        const auto& h = preset_channel("H3");
        RandomStream noise(23, 3, 0, 0);
        Mat s(2, n);
        const SmFrame tx = modulate_ndc(x);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t k = 0; k < n; ++k) s(r, k) = tx.rows[r][k];
        const Mat g = zf_equalize(h, propagate_block(h, s, NoiseModel{0.0}, noise));
        const auto rx =
            demodulate_frame(reconstruct_sign_select(g, detect_active_index(g)), c,
                             Scheme::Ndc);
        if (rx != bits) fails += "bipolar round trip; ";

        std::vector<int> ibits(31);
        for (auto& b : ibits) b = noise.next_bit();
        std::vector<std::size_t> choice(ibits.begin(), ibits.end());
        const OsmLedFrames osm = osm_modulate_dco(syms, choice, 2, n, 13.0);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t k = 0; k < n; ++k) s(r, k) = osm.rows[r][k];
        const Mat g2 = zf_equalize(h, propagate_block(h, s, NoiseModel{0.0}, noise));
        const OsmBits ob = recover_osm_subcarrier(g2, c, Scheme::DcoOsm, 2);
        if (ob.index_bits != ibits || ob.data_bits != bits)
            fails += "routed round trip; ";
    }

    {  // linear gain leaves no signal correlation in the residual
        const Mat& c = preset_channel("H4").inverse();
        const auto stats = SignalStats::from_sigma(1.0, 16, 2048, 2);
        const BussgangResult r = bussgang_decomposition(c, 0.1, stats);
        const int steps = 8000;
        double exf = 0.0;
        const double h = 16.0 / steps;
        for (int i = 0; i <= steps; ++i) {
            const double s = -8.0 + i * h;
            const auto m = conditional_moments(s == 0.0 ? 1e-14 : s, c, 0.1);
            const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
            exf += w * s * (m.p_c * m.f_c + m.p_w * m.f_w) * normal_pdf(s);
        }
        exf *= h;
        if (std::fabs(exf - r.alpha_bar) >= 1e-6) fails += "orthogonality; ";
    }

    {  // outcome probabilities are complementary
        double worst = 0.0;
        for (const char* name : {"H1", "H4", "H8"}) {
            const Mat& c = preset_channel(name).inverse();
            for (double s = -2.0; s <= 2.0; s += 0.05) {
                const auto m = conditional_moments(s == 0.0 ? 1e-14 : s, c, 0.1);
                worst = std::max(worst, std::fabs(m.p_c + m.p_w - 1.0));
            }
        }
        if (worst >= 1e-8) fails += "complementarity; ";
    }

    {  // worker count never changes the result
        SweepConfig cfg = base_sweep(Scheme::Ndc, "H3", 4);
        cfg.n = 64;
        cfg.ebn0_points = {6.0};
        cfg.min_bits = 20000;
        cfg.min_errors = 50;
        cfg.frame_cap = 2000;
        cfg.seed = 3;
        cfg.workers = 1;
        const BerPoint a = run_point(cfg, 6.0);
        cfg.workers = 8;
        const BerPoint b = run_point(cfg, 6.0);
        if (a.bits != b.bits || a.errors != b.errors) fails += "worker determinism; ";
    }

    Outcome out;
    out.pass = fails.empty();
    out.detail = fails.empty()
                     ? fmt("6/6 property groups hold, %.1f s", t.seconds())
                     : fails + fmt("(%.1f s)", t.seconds());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > 8) {
        std::fprintf(stderr, "criterion must be 1..8\n");
        return 2;
    }

    Outcome (*checks[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                             criterion_5, criterion_6, criterion_7, criterion_8};
    bool all = true;
    for (int n = 1; n <= 8; ++n) {
        if (only != 0 && n != only) continue;
        const Outcome o = checks[n - 1]();
        std::printf("criterion %d: %s (%s)\n", n, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
