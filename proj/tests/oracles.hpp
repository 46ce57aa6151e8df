#pragma once

// Test-side oracles, deliberately independent of the library implementations
// they cross-check: an AGM phase oracle for the Jacobi functions, a classical
// RK4 integrator for ODE references, Richardson-extrapolated trapezoid and
// adaptive Simpson quadrature, and a trigonometric cubic solver.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// sn/cn/dn via the ascending-phase AGM recurrence (A&S 16.4), coded
// separately from the library's reducer.
struct Jacobi {
    double sn, cn, dn;
};

inline Jacobi jacobi_agm(double u, double m) {
    if (m < 1e-14) return {std::sin(u), std::cos(u), 1.0};
    if (1.0 - m < 1e-14) {
        return {std::tanh(u), 1.0 / std::cosh(u), 1.0 / std::cosh(u)};
    }
    std::vector<double> a{1.0}, c{std::sqrt(m)};
    double b = std::sqrt(1.0 - m);
    while (std::abs(c.back()) > 1e-16 * a.back() && a.size() < 40) {
        const double an = 0.5 * (a.back() + b);
        c.push_back(0.5 * (a.back() - b));
        b = std::sqrt(a.back() * b);
        a.push_back(an);
    }
    const int n = static_cast<int>(a.size()) - 1;
    double phi = std::pow(2.0, n) * a[n] * u;
    double phi_next = phi;
    for (int i = n; i >= 1; --i) {
        phi_next = phi;
        const double s = std::max(-1.0, std::min(1.0, c[i] / a[i] * std::sin(phi)));
        phi = 0.5 * (phi + std::asin(s));
    }
    return {std::sin(phi), std::cos(phi), std::cos(phi) / std::cos(phi_next - phi)};
}

// Classical fixed-step RK4 for y' = f(t, y).
template <std::size_t N>
using OdeFn = std::function<std::array<double, N>(double, const std::array<double, N>&)>;

template <std::size_t N>
std::array<double, N> rk4_integrate(const OdeFn<N>& f, std::array<double, N> y, double t0,
                                    double t1, int steps) {
    const double h = (t1 - t0) / steps;
    double t = t0;
    for (int s = 0; s < steps; ++s) {
        const auto k1 = f(t, y);
        std::array<double, N> y2;
        for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + 0.5 * h * k1[i];
        const auto k2 = f(t + 0.5 * h, y2);
        for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + 0.5 * h * k2[i];
        const auto k3 = f(t + 0.5 * h, y2);
        for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + h * k3[i];
        const auto k4 = f(t + h, y2);
        for (std::size_t i = 0; i < N; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
    }
    return y;
}

// Trapezoid rule with one Richardson extrapolation step (effective order 4).
inline double trapezoid_richardson(const std::function<double(double)>& f, double a, double b,
                                   int n) {
    auto trap = [&](int steps) {
        const double h = (b - a) / steps;
        double acc = 0.5 * (f(a) + f(b));
        for (int i = 1; i < steps; ++i) acc += f(a + i * h);
        return acc * h;
    };
    const double coarse = trap(n);
    const double fine = trap(2 * n);
    return fine + (fine - coarse) / 3.0;
}

// Adaptive Simpson quadrature.
inline double simpson_adaptive(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int depth = 40) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double eps,
            int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * eps) {
            return left + right + (left + right - whole) / 15.0;
        }
        return rec(lo, mid, flo, flm, fmid, 0.5 * eps, d - 1) +
               rec(mid, hi, fmid, frm, fhi, 0.5 * eps, d - 1);
    };
    return rec(a, b, fa, fm, fb, tol, depth);
}

// Real roots of x^3 + p2 x^2 + p1 x + p0 (three real roots assumed),
// trigonometric method, ascending order.
inline std::array<double, 3> cubic_roots(double p2, double p1, double p0) {
    const double q = (3.0 * p1 - p2 * p2) / 9.0;
    const double r = (9.0 * p2 * p1 - 27.0 * p0 - 2.0 * p2 * p2 * p2) / 54.0;
    const double disc = q * q * q + r * r;
    std::array<double, 3> roots{};
    if (disc <= 1e-30) {
        const double rho = std::sqrt(std::max(0.0, -q * q * q));
        const double theta = std::acos(std::max(-1.0, std::min(1.0, rho == 0.0 ? 0.0 : r / rho)));
        const double mag = 2.0 * std::sqrt(std::max(0.0, -q));
        for (int k = 0; k < 3; ++k) {
            roots[k] = mag * std::cos((theta + 2.0 * M_PI * k) / 3.0) - p2 / 3.0;
        }
        std::sort(roots.begin(), roots.end());
    } else {
        const double s = std::cbrt(r + std::sqrt(disc));
        const double t = std::cbrt(r - std::sqrt(disc));
        roots = {s + t - p2 / 3.0, s + t - p2 / 3.0, s + t - p2 / 3.0};
    }
    return roots;
}

// 4th-order centered first derivative.
template <typename F>
double deriv4(const F& f, double x, double h) {
    return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

}  // namespace oracle
