#pragma once

#include <cstddef>
#include <utility>

#include "ndc/channel.hpp"
#include "ndc/mat.hpp"
#include "ndc/normal.hpp"
#include "ndc/scheme.hpp"

namespace ndc {

// Ties the time-domain sample deviation sigma_s to the per-bit energies for a
// given constellation and frame geometry:
//   eb      = 2*N*N_t*sigma_s^2 / ((N-2)*log2 M)   (the sweep-axis convention)
//   eb_elec = eb / (2*N_t)                          (per-bit electrical energy)
struct SignalStats {
    double sigma_s = 0.0;
    double eb = 0.0;
    double eb_elec = 0.0;
    int m = 0;
    std::size_t n = 0;
    std::size_t n_t = 0;

    static SignalStats from_sigma(double sigma_s, int m, std::size_t n, std::size_t n_t);
    static SignalStats from_eb(double eb, int m, std::size_t n, std::size_t n_t);
};

// Joint density of (n1, n2) restricted to the event that the two-LED argmax
// detector picks the active LED for an emitted magnitude |s| (sign of s selects
// which LED is active). c is the 2x2 ZF inverse.
double detection_density_correct(double s, double n1, double n2, const Mat& c,
                                 double sigma_n);
double detection_density_wrong(double s, double n1, double n2, const Mat& c,
                               double sigma_n);

// First and second moments of the reconstructed sample conditioned on the
// detection outcome, at fixed emitted sample s. f_c carries the sign
// convention of the reconstruction (f_c = sgn(s)*E[selected | correct], f_w =
// -sgn(s)*E[selected | wrong]); p_c and p_w are the outcome probabilities.
struct ConditionalMoments {
    double f_c = 0.0;
    double v_c = 0.0;
    double f_w = 0.0;
    double v_w = 0.0;
    double p_c = 1.0;
    double p_w = 0.0;
    bool underflow = false;  // wrong-detection probability below 1e-300
};

// Closed-form path (truncated-Gaussian moments along the decision direction).
ConditionalMoments conditional_moments(double s, const Mat& c, double sigma_n);

// Quadrature path kept as an independent cross-check: one-dimensional outer
// integration with the inner Gaussian half-line integrals done in closed form.
ConditionalMoments conditional_moments_quad(double s, const Mat& c, double sigma_n);

// Linear-gain plus uncorrelated-distortion description of the detector,
// averaged over the Gaussian signal prior. Branch quantities are conditioned
// on the detection outcome; alpha_bar and n_bar recombine them exactly.
struct BussgangResult {
    double alpha_c = 0.0;
    double y_c = 0.0;
    double alpha_w = 0.0;
    double y_w = 0.0;
    double vbar_c = 0.0;
    double vbar_w = 0.0;
    double d_c = 0.0;
    double alpha_bar = 0.0;
    double n_bar = 0.0;
    double snr_elec = 0.0;
};

double correct_detection_prob(const Mat& c, double sigma_n, const SignalStats& stats);

// (vbar_c, vbar_w): noise variances of the selected sample averaged over the
// signal prior within each detection outcome.
std::pair<double, double> averaged_variances(const Mat& c, double sigma_n,
                                             const SignalStats& stats);

struct BranchFactors {
    double alpha_c = 0.0;
    double y_c = 0.0;
    double alpha_w = 0.0;
    double y_w = 0.0;
};

BranchFactors bussgang_factors(const Mat& c, double sigma_n, const SignalStats& stats);

// Full pipeline in one pass; fills every BussgangResult field.
BussgangResult bussgang_decomposition(const Mat& c, double sigma_n,
                                      const SignalStats& stats);

// Recombines branch quantities into the effective per-bit electrical SNR:
// alpha_bar = d_c*alpha_c + (1-d_c)*alpha_w and n_bar adds the between-branch
// mean spread d_c*(1-d_c)*(alpha_c-alpha_w)^2*sigma_s^2 on top of the
// within-branch variances, which makes n_bar the exact residual variance of
// the reconstruction about alpha_bar*s.
double effective_snr(const SignalStats& stats, const BussgangResult& r);

// Square/rectangular M-QAM bit error rate at a given per-bit electrical SNR.
double theoretical_ber(int m, double snr_elec);

// Bits per second per Hertz. The asymptotic flag replaces (N-2)/2N with 1/2.
double spectral_efficiency(Scheme scheme, int m, std::size_t n_t, std::size_t n,
                           bool asymptotic = false);

struct MatchedOrders {
    int ndc = 0;
    int dco = 0;
    int aco = 0;
};

// Smallest power-of-two constellation orders giving all three schemes the same
// asymptotic spectral efficiency (two transmitters).
MatchedOrders matched_constellations(double target_se, std::size_t n_t);

// End-to-end analytic BER for the sign-carrying scheme over channel h at the
// given Eb/N0 (dB, sweep-axis convention).
double ndc_analytic_ber(const ChannelMatrix& h, int m, std::size_t n, std::size_t n_t,
                        double ebn0_db);

}  // namespace ndc
