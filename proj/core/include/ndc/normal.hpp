#pragma once

namespace ndc {

double normal_pdf(double x);
double normal_cdf(double x);

// Upper-tail probability Q(x) = P(Z > x) for standard normal Z.
double q_function(double x);

// Solves q_function(x) = p for p in (0, 1).
double inverse_q(double p);

// pdf(t)/Q(t) for t >= 0; switches to an asymptotic continued expansion once
// Q(t) underflows the direct ratio.
double mills_ratio_upper(double t);

}  // namespace ndc
