#pragma once

#include <functional>
#include <vector>

namespace shapestat {

// Adaptive Gauss-Kronrod (7-15) integration of f over [a, b].
// `breakpoints` seeds panel edges at known kinks of the integrand.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-8, const std::vector<double>& breakpoints = {});

// Fixed composite Gauss-Legendre rule with `panels` equal panels, 4 nodes
// each. Used for high-precision reference values.
double integrate_fixed(const std::function<double(double)>& f, double a, double b,
                       std::size_t panels);

}  // namespace shapestat
