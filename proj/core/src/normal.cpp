#include "ndc/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace ndc {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kInvSqrt2 = 0.7071067811865475244;
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double q_function(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double inverse_q(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("inverse_q needs p in (0,1)");
    // initial guess: asymptotic tail for small p, symmetric otherwise
    double x;
    if (p < 0.5) {
        const double t = std::sqrt(-2.0 * std::log(p));
        x = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
    } else {
        return -inverse_q(1.0 - p);
    }
    for (int i = 0; i < 60; ++i) {
        const double err = q_function(x) - p;
        const double step = err / normal_pdf(x);
        x += step;
        if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(x))) break;
    }
    return x;
}

double mills_ratio_upper(double t) {
    if (t < 26.0) return normal_pdf(t) / q_function(t);
    const double t2 = t * t;
    const double series =
        1.0 - 1.0 / t2 + 3.0 / (t2 * t2) - 15.0 / (t2 * t2 * t2) +
        105.0 / (t2 * t2 * t2 * t2) - 945.0 / (t2 * t2 * t2 * t2 * t2);
    return t / series;
}

}  // namespace ndc
