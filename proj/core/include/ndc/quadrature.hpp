#pragma once

#include <functional>

namespace ndc {

// Adaptive Gauss-Kronrod (7,15) integration over [a, b] with absolute error
// control. Bisects wherever the embedded-rule error estimate exceeds the
// locally apportioned tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 30);

}  // namespace ndc
