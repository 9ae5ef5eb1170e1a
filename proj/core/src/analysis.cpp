#include "ndc/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "ndc/quadrature.hpp"

namespace ndc {

namespace {

constexpr double quad_tol = 1e-11;
constexpr double prob_floor = 1e-300;

bool power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_stats_args(int m, std::size_t n, std::size_t n_t) {
    if (m < 4 || !power_of_two(std::size_t(m)))
        throw std::domain_error("constellation order must be a power of two >= 4");
    if (n < 8 || !power_of_two(n))
        throw std::domain_error("frame size must be a power of two >= 8");
    if (n_t == 0) throw std::domain_error("transmitter count must be positive");
}

// Decision geometry at one emitted sample: the detector compares the active
// and inactive ZF rows, so the outcome depends on the noise only through its
// projection on the row difference.
struct Geometry {
    double t = 0.0;        // |s| over the deviation of that projection
    double sigma_vc = 0.0; // deviation of the selected-row noise, correct case
    double sigma_vw = 0.0; // deviation of the selected-row noise, wrong case
    double rho_c = 0.0;    // correlation of selected-row noise with the projection
    double rho_w = 0.0;
    int sign = 1;
};

Geometry decision_geometry(double s, const Mat& c, double sigma_n) {
    if (c.rows() != 2 || c.cols() != 2)
        throw std::invalid_argument("analysis expects a 2x2 ZF inverse");
    if (!(sigma_n > 0.0)) throw std::domain_error("noise deviation must be positive");
    const double p = c(0, 0) - c(1, 0);
    const double q = c(0, 1) - c(1, 1);
    const double norm_pq = std::hypot(p, q);
    if (norm_pq < 1e-150)
        throw std::runtime_error("detector separation vanished (identical ZF rows)");
    Geometry g;
    g.sign = s >= 0.0 ? 1 : -1;
    const std::size_t active = s >= 0.0 ? 0 : 1;
    const std::size_t idle = 1 - active;
    const double rc1 = c(active, 0), rc2 = c(active, 1);
    const double rw1 = c(idle, 0), rw2 = c(idle, 1);
    const double norm_rc = std::hypot(rc1, rc2);
    const double norm_rw = std::hypot(rw1, rw2);
    if (norm_rc < 1e-150 || norm_rw < 1e-150)
        throw std::runtime_error("degenerate ZF row");
    g.t = std::fabs(s) / (sigma_n * norm_pq);
    g.sigma_vc = sigma_n * norm_rc;
    g.sigma_vw = sigma_n * norm_rw;
    g.rho_c = (rc1 * p + rc2 * q) / (norm_rc * norm_pq);
    g.rho_w = (rw1 * p + rw2 * q) / (norm_rw * norm_pq);
    return g;
}

double signal_pdf(double s, double sigma_s) {
    return normal_pdf(s / sigma_s) / sigma_s;
}

// Integrates f over [-8 sigma_s, 8 sigma_s] with a break at zero, where the
// active-LED role switches.
double signal_integral(const std::function<double(double)>& f, double sigma_s) {
    const double lim = 8.0 * sigma_s;
    return integrate(f, -lim, 0.0, quad_tol) + integrate(f, 0.0, lim, quad_tol);
}

struct RawIntegrals {
    double d_c = 0.0, d_w = 0.0;
    double sc = 0.0, fc2 = 0.0, vc = 0.0;  // s*f_c*p_c, f_c^2*p_c, v_c*p_c against the prior
    double sw = 0.0, fw2 = 0.0, vw = 0.0;
};

RawIntegrals branch_integrals(const Mat& c, double sigma_n, const SignalStats& stats) {
    const double ss = stats.sigma_s;
    auto moments = [&](double s) { return conditional_moments(s, c, sigma_n); };
    RawIntegrals r;
    r.d_c = signal_integral(
        [&](double s) { return moments(s).p_c * signal_pdf(s, ss); }, ss);
    r.d_w = signal_integral(
        [&](double s) { return moments(s).p_w * signal_pdf(s, ss); }, ss);
    r.sc = signal_integral(
        [&](double s) {
            auto m = moments(s);
            return s * m.f_c * m.p_c * signal_pdf(s, ss);
        },
        ss);
    r.fc2 = signal_integral(
        [&](double s) {
            auto m = moments(s);
            return m.f_c * m.f_c * m.p_c * signal_pdf(s, ss);
        },
        ss);
    r.vc = signal_integral(
        [&](double s) {
            auto m = moments(s);
            return m.v_c * m.p_c * signal_pdf(s, ss);
        },
        ss);
    r.sw = signal_integral(
        [&](double s) {
            auto m = moments(s);
            return s * m.f_w * m.p_w * signal_pdf(s, ss);
        },
        ss);
    r.fw2 = signal_integral(
        [&](double s) {
            auto m = moments(s);
            return m.f_w * m.f_w * m.p_w * signal_pdf(s, ss);
        },
        ss);
    r.vw = signal_integral(
        [&](double s) {
            auto m = moments(s);
            return m.v_w * m.p_w * signal_pdf(s, ss);
        },
        ss);
    return r;
}

}  // namespace

SignalStats SignalStats::from_sigma(double sigma_s, int m, std::size_t n,
                                    std::size_t n_t) {
    check_stats_args(m, n, n_t);
    if (!(sigma_s > 0.0)) throw std::domain_error("sigma_s must be positive");
    SignalStats st;
    st.sigma_s = sigma_s;
    st.m = m;
    st.n = n;
    st.n_t = n_t;
    const double bits = std::log2(double(m));
    st.eb = 2.0 * double(n) * double(n_t) * sigma_s * sigma_s / ((double(n) - 2.0) * bits);
    st.eb_elec = st.eb / (2.0 * double(n_t));
    return st;
}

SignalStats SignalStats::from_eb(double eb, int m, std::size_t n, std::size_t n_t) {
    check_stats_args(m, n, n_t);
    if (!(eb > 0.0)) throw std::domain_error("eb must be positive");
    const double bits = std::log2(double(m));
    const double sigma =
        std::sqrt(eb * bits * (double(n) - 2.0) / (2.0 * double(n) * double(n_t)));
    return from_sigma(sigma, m, n, n_t);
}

double detection_density_correct(double s, double n1, double n2, const Mat& c,
                                 double sigma_n) {
    if (c.rows() != 2 || c.cols() != 2)
        throw std::invalid_argument("analysis expects a 2x2 ZF inverse");
    if (!(sigma_n > 0.0)) throw std::domain_error("noise deviation must be positive");
    double p = c(0, 0) - c(1, 0);
    double q = c(0, 1) - c(1, 1);
    if (s < 0.0) {
        p = -p;
        q = -q;
    }
    if (!(std::fabs(s) + p * n1 + q * n2 > 0.0)) return 0.0;
    return normal_pdf(n1 / sigma_n) * normal_pdf(n2 / sigma_n) / (sigma_n * sigma_n);
}

double detection_density_wrong(double s, double n1, double n2, const Mat& c,
                               double sigma_n) {
    if (c.rows() != 2 || c.cols() != 2)
        throw std::invalid_argument("analysis expects a 2x2 ZF inverse");
    if (!(sigma_n > 0.0)) throw std::domain_error("noise deviation must be positive");
    double p = c(0, 0) - c(1, 0);
    double q = c(0, 1) - c(1, 1);
    if (s < 0.0) {
        p = -p;
        q = -q;
    }
    if (!(std::fabs(s) + p * n1 + q * n2 < 0.0)) return 0.0;
    return normal_pdf(n1 / sigma_n) * normal_pdf(n2 / sigma_n) / (sigma_n * sigma_n);
}

ConditionalMoments conditional_moments(double s, const Mat& c, double sigma_n) {
    const Geometry g = decision_geometry(s, c, sigma_n);
    ConditionalMoments out;
    out.p_c = normal_cdf(g.t);
    out.p_w = q_function(g.t);

    // Selected value conditioned on a correct pick: |s| plus the active-row
    // noise, truncated along the decision direction.
    const double lam_c = normal_pdf(g.t) / out.p_c;
    const double mean_c =
        std::fabs(s) + g.rho_c * g.sigma_vc * (g.sign > 0 ? lam_c : -lam_c);
    out.f_c = g.sign * mean_c;
    out.v_c = g.sigma_vc * g.sigma_vc *
              (1.0 - g.rho_c * g.rho_c * (g.t * lam_c + lam_c * lam_c));

    if (out.p_w < prob_floor) {
        out.p_w = 0.0;
        out.underflow = true;
        return out;
    }
    const double lam_w = mills_ratio_upper(g.t);
    const double mean_w = g.rho_w * g.sigma_vw * (g.sign > 0 ? -lam_w : lam_w);
    out.f_w = -g.sign * mean_w;
    out.v_w = g.sigma_vw * g.sigma_vw *
              (1.0 + g.rho_w * g.rho_w * (g.t * lam_w - lam_w * lam_w));
    return out;
}

ConditionalMoments conditional_moments_quad(double s, const Mat& c, double sigma_n) {
    if (c.rows() != 2 || c.cols() != 2)
        throw std::invalid_argument("analysis expects a 2x2 ZF inverse");
    if (!(sigma_n > 0.0)) throw std::domain_error("noise deviation must be positive");
    double p = c(0, 0) - c(1, 0);
    double q = c(0, 1) - c(1, 1);
    const int sign = s >= 0.0 ? 1 : -1;
    if (sign < 0) {
        p = -p;
        q = -q;
    }
    const std::size_t active = sign > 0 ? 0 : 1;
    const std::size_t idle = 1 - active;
    const double a = std::fabs(s);

    // Inner n2 integral over the half-line where the detection lands in the
    // requested branch, in closed form for each power of the selected value.
    auto half_moments = [&](double n1, bool correct, const double row[2], bool add_a,
                            double out[3]) {
        const double base = (add_a ? a : 0.0) + row[0] * n1;
        const double thresh = a + p * n1;
        double i0, i1, i2;
        if (std::fabs(q) < 1e-150) {
            const bool in = correct ? thresh > 0.0 : thresh < 0.0;
            i0 = in ? 1.0 : 0.0;
            i1 = 0.0;
            i2 = in ? sigma_n * sigma_n : 0.0;
        } else {
            const double l = -thresh / (q * sigma_n);
            const bool upper = correct == (q > 0.0);
            if (upper) {
                i0 = q_function(l);
                i1 = sigma_n * normal_pdf(l);
                i2 = sigma_n * sigma_n * (q_function(l) + l * normal_pdf(l));
            } else {
                i0 = normal_cdf(l);
                i1 = -sigma_n * normal_pdf(l);
                i2 = sigma_n * sigma_n * (normal_cdf(l) - l * normal_pdf(l));
            }
        }
        out[0] = i0;
        out[1] = base * i0 + row[1] * i1;
        out[2] = base * base * i0 + 2.0 * base * row[1] * i1 + row[1] * row[1] * i2;
    };

    const double row_c[2] = {c(active, 0), c(active, 1)};
    const double row_w[2] = {c(idle, 0), c(idle, 1)};
    const double lim = 8.0 * sigma_n;
    double mc[3], mw[3];
    for (int k = 0; k < 3; ++k) {
        mc[k] = integrate(
            [&](double n1) {
                double v[3];
                half_moments(n1, true, row_c, true, v);
                return v[k] * normal_pdf(n1 / sigma_n) / sigma_n;
            },
            -lim, lim, 1e-13, 40);
        mw[k] = integrate(
            [&](double n1) {
                double v[3];
                half_moments(n1, false, row_w, false, v);
                return v[k] * normal_pdf(n1 / sigma_n) / sigma_n;
            },
            -lim, lim, 1e-13, 40);
    }

    ConditionalMoments out;
    out.p_c = mc[0];
    out.p_w = mw[0];
    const double mean_c = mc[1] / mc[0];
    out.f_c = sign * mean_c;
    out.v_c = mc[2] / mc[0] - mean_c * mean_c;
    if (mw[0] < prob_floor) {
        out.p_w = 0.0;
        out.underflow = true;
        return out;
    }
    const double mean_w = mw[1] / mw[0];
    out.f_w = -sign * mean_w;
    out.v_w = mw[2] / mw[0] - mean_w * mean_w;
    return out;
}

double correct_detection_prob(const Mat& c, double sigma_n, const SignalStats& stats) {
    const double ss = stats.sigma_s;
    return signal_integral(
        [&](double s) { return conditional_moments(s, c, sigma_n).p_c * signal_pdf(s, ss); },
        ss);
}

std::pair<double, double> averaged_variances(const Mat& c, double sigma_n,
                                             const SignalStats& stats) {
    const RawIntegrals r = branch_integrals(c, sigma_n, stats);
    const double vc = r.d_c > prob_floor ? r.vc / r.d_c : 0.0;
    const double vw = r.d_w > prob_floor ? r.vw / r.d_w : 0.0;
    return {vc, vw};
}

BranchFactors bussgang_factors(const Mat& c, double sigma_n, const SignalStats& stats) {
    const RawIntegrals r = branch_integrals(c, sigma_n, stats);
    const double ss2 = stats.sigma_s * stats.sigma_s;
    BranchFactors f;
    if (r.d_c > prob_floor) {
        f.alpha_c = r.sc / (r.d_c * ss2);
        f.y_c = r.fc2 / r.d_c - f.alpha_c * f.alpha_c * ss2;
    }
    if (r.d_w > prob_floor) {
        f.alpha_w = r.sw / (r.d_w * ss2);
        f.y_w = r.fw2 / r.d_w - f.alpha_w * f.alpha_w * ss2;
    }
    return f;
}

BussgangResult bussgang_decomposition(const Mat& c, double sigma_n,
                                      const SignalStats& stats) {
    const RawIntegrals r = branch_integrals(c, sigma_n, stats);
    const double ss2 = stats.sigma_s * stats.sigma_s;
    BussgangResult out;
    out.d_c = r.d_c;
    if (r.d_c > prob_floor) {
        out.alpha_c = r.sc / (r.d_c * ss2);
        out.y_c = r.fc2 / r.d_c - out.alpha_c * out.alpha_c * ss2;
        out.vbar_c = r.vc / r.d_c;
    }
    if (r.d_w > prob_floor) {
        out.alpha_w = r.sw / (r.d_w * ss2);
        out.y_w = r.fw2 / r.d_w - out.alpha_w * out.alpha_w * ss2;
        out.vbar_w = r.vw / r.d_w;
    }
    // Recombine straight from the raw integrals: alpha_bar*sigma_s^2 is the
    // signal correlation of the reconstruction and n_bar its residual second
    // moment, which stays well conditioned when one branch nearly vanishes.
    out.alpha_bar = (r.sc + r.sw) / ss2;
    out.n_bar = (r.fc2 + r.vc + r.fw2 + r.vw) - out.alpha_bar * out.alpha_bar * ss2;
    if (!(out.n_bar > 0.0))
        throw std::runtime_error("nonpositive residual noise in the decomposition");
    out.snr_elec = out.alpha_bar * out.alpha_bar * stats.eb_elec / out.n_bar;
    return out;
}

double effective_snr(const SignalStats& stats, const BussgangResult& r) {
    const double ss2 = stats.sigma_s * stats.sigma_s;
    const double d_w = 1.0 - r.d_c;
    const double alpha_bar = r.d_c * r.alpha_c + d_w * r.alpha_w;
    const double spread = r.alpha_c - r.alpha_w;
    const double n_bar = r.d_c * (r.vbar_c + r.y_c) + d_w * (r.vbar_w + r.y_w) +
                         r.d_c * d_w * spread * spread * ss2;
    if (!(n_bar > 0.0))
        throw std::runtime_error("nonpositive residual noise in the decomposition");
    return alpha_bar * alpha_bar * stats.eb_elec / n_bar;
}

double theoretical_ber(int m, double snr_elec) {
    if (m < 4 || !power_of_two(std::size_t(m)))
        throw std::domain_error("constellation order must be a power of two >= 4");
    if (snr_elec < 0.0) throw std::domain_error("snr must be nonnegative");
    const double md = double(m);
    const double root_m = std::sqrt(md);
    const double bits = std::log2(md);
    const double arg = std::sqrt(3.0 * bits / (md - 1.0) * snr_elec);
    return 4.0 * (root_m - 1.0) / (root_m * bits) * q_function(arg) +
           4.0 * (root_m - 2.0) / (root_m * bits) * q_function(3.0 * arg);
}

double spectral_efficiency(Scheme scheme, int m, std::size_t n_t, std::size_t n,
                           bool asymptotic) {
    if (m < 4 || !power_of_two(std::size_t(m)))
        throw std::domain_error("constellation order must be a power of two >= 4");
    if (n_t == 0 || !power_of_two(n_t))
        throw std::domain_error("transmitter count must be a power of two");
    if (!asymptotic && (n < 8 || !power_of_two(n)))
        throw std::domain_error("frame size must be a power of two >= 8");
    const double joint = std::log2(double(m) * double(n_t));
    const double factor =
        asymptotic ? 0.5 : (double(n) - 2.0) / (2.0 * double(n));
    switch (scheme) {
        case Scheme::Ndc:
            if (n_t % 2 != 0)
                throw std::domain_error("the sign-carrying scheme needs an even LED count");
            return factor * (joint - 1.0);
        case Scheme::DcoOsm:
            return factor * joint;
        case Scheme::AcoOsm:
            return 0.25 * joint;
    }
    throw std::domain_error("unknown scheme");
}

MatchedOrders matched_constellations(double target_se, std::size_t n_t) {
    if (n_t != 2)
        throw std::domain_error("matched orders are defined for two transmitters");
    const double k2 = 2.0 * target_se;
    const double k4 = 4.0 * target_se;
    const long e_ndc = std::lround(k2);
    const long e_dco = std::lround(k2) - 1;
    const long e_aco = std::lround(k4) - 1;
    if (std::fabs(k2 - double(std::lround(k2))) > 1e-9 ||
        std::fabs(k4 - double(std::lround(k4))) > 1e-9)
        throw std::domain_error("no power-of-two orders reach that spectral efficiency");
    if (e_ndc < 2 || e_dco < 2 || e_aco < 2 || e_aco > 30)
        throw std::domain_error("no power-of-two orders reach that spectral efficiency");
    MatchedOrders out;
    out.ndc = 1 << e_ndc;
    out.dco = 1 << e_dco;
    out.aco = 1 << e_aco;
    return out;
}

double ndc_analytic_ber(const ChannelMatrix& h, int m, std::size_t n, std::size_t n_t,
                        double ebn0_db) {
    if (n_t != 2)
        throw std::domain_error("the analytic pipeline covers two transmitters");
    const SignalStats stats = SignalStats::from_sigma(1.0, m, n, n_t);
    if (std::isinf(ebn0_db) && ebn0_db > 0.0) return 0.0;
    const double n0 = stats.eb * std::pow(10.0, -ebn0_db / 10.0);
    const double sigma_n = std::sqrt(n0 / 2.0);
    const BussgangResult bg = bussgang_decomposition(h.inverse(), sigma_n, stats);
    return theoretical_ber(m, bg.snr_elec);
}

}  // namespace ndc
