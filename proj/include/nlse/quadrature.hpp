#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nlse {

using ScalarFn = std::function<double(double)>;

// Fixed 12-point Gauss-Legendre rule on [a, b].
double integrate_gl12(const ScalarFn& f, double a, double b);

// Adaptive bisection on the GL-12 rule until |whole - (left+right)| <= tol.
double integrate_adaptive(const ScalarFn& f, double a, double b, double tol = 1e-12,
                          int max_depth = 48);

// Antiderivative F with F(anchor) = 0 evaluated at sorted abscissae xs, by
// cumulative per-interval quadrature (each interval integrated adaptively, so
// point-to-point jitter stays at roundoff level).
std::vector<double> cumulative_integral(const ScalarFn& f, std::span<const double> xs,
                                        double anchor, double tol = 1e-12);

}  // namespace nlse
