#include "nlse/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlse {

namespace {

constexpr double kModulusSlack = 1e-12;
constexpr int kAgmMaxIter = 32;

}  // namespace

EllipticModulus::EllipticModulus(double m_in) : m(m_in) {
    if (!std::isfinite(m_in) || m_in < -kModulusSlack || m_in > 1.0 + kModulusSlack) {
        throw std::domain_error("elliptic modulus m must lie in [0, 1]");
    }
    m = std::clamp(m_in, 0.0, 1.0);
}

double elliptic_k(EllipticModulus mod) {
    const double m = mod.m;
    if (m == 1.0) {
        throw std::domain_error("K(m) diverges at m = 1");
    }
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int i = 0; i < kAgmMaxIter && std::abs(a - b) > 1e-17 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (2.0 * a);
}

JacobiTriple jacobi_elliptic(double u, EllipticModulus mod) {
    if (!std::isfinite(u)) {
        throw std::domain_error("jacobi_elliptic: argument must be finite");
    }
    const double m = mod.m;
    if (m < 1e-16) {
        return {std::sin(u), std::cos(u), 1.0};
    }
    if (1.0 - m < 1e-16) {
        const double s = 1.0 / std::cosh(u);
        return {std::tanh(u), s, s};
    }

    // AGM scale: a_{i+1} = (a_i+b_i)/2, b_{i+1} = sqrt(a_i b_i), c_{i+1} = (a_i-b_i)/2.
    double a[kAgmMaxIter + 1], c[kAgmMaxIter + 1];
    a[0] = 1.0;
    c[0] = std::sqrt(m);
    double b = std::sqrt(1.0 - m);
    int n = 0;
    while (n < kAgmMaxIter) {
        const double an = 0.5 * (a[n] + b);
        const double cn = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
        a[n] = an;
        c[n] = cn;
        if (std::abs(cn) <= 1e-17 * an) break;
    }

    // Reduce modulo the period 4K = 2 pi / agm; keeps the backward recurrence
    // accurate for large |u|.
    const double four_k = 2.0 * M_PI / a[n];
    double ur = u;
    if (std::abs(u) > 0.5 * four_k) {
        ur = std::remainder(u, four_k);
    }

    // Backward recurrence: phi_{i-1} = (phi_i + asin((c_i/a_i) sin phi_i)) / 2.
    double phi = std::ldexp(a[n] * ur, n);
    double phi1 = phi;  // phi at level 1, needed for dn
    for (int i = n; i >= 1; --i) {
        const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
        const double prev = 0.5 * (phi + std::asin(s));
        if (i == 1) phi1 = phi;
        phi = prev;
    }

    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    const double cd = std::cos(phi1 - phi);
    double dn = (std::abs(cd) > 1e-300) ? cn / cd : std::sqrt(1.0 - m * sn * sn);
    // Guard against the recurrence drifting at extreme moduli.
    if (!std::isfinite(dn)) dn = std::sqrt(std::max(0.0, 1.0 - m * sn * sn));
    return {sn, cn, dn};
}

namespace {

// Maclaurin series of erfi: (2/sqrt(pi)) sum_k x^{2k+1} / (k! (2k+1)).
// All terms are positive, so there is no cancellation at any x.
double erfi_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 0; k < 400; ++k) {
        term *= x2 / static_cast<double>(k + 1);
        const double add = term / static_cast<double>(2 * k + 3);
        sum += add;
        if (add < 1e-17 * sum) break;
    }
    return sum * M_2_SQRTPI;  // 2/sqrt(pi)
}

// Asymptotic expansion erfi(x) ~ e^{x^2}/(x sqrt(pi)) sum_k (2k-1)!!/(2x^2)^k.
double erfi_asymptotic(double x, bool& overflow) {
    const double x2 = x * x;
    if (x2 > 705.0) {  // e^{x^2} exceeds double range
        overflow = true;
        return std::numeric_limits<double>::max();
    }
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= static_cast<double>(2 * k - 1) / (2.0 * x2);
        if (term < 1e-17 * sum) break;
        sum += term;
    }
    return std::exp(x2) / (x * std::sqrt(M_PI)) * sum;
}

}  // namespace

ErfPair erf_family(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("erf_family: argument must be finite");
    }
    ErfPair out{std::erf(x), 0.0, false};
    const double ax = std::abs(x);
    double v;
    if (ax < 6.0) {
        v = erfi_series(ax);
    } else {
        v = erfi_asymptotic(ax, out.erfi_overflow);
    }
    out.erfi = (x < 0.0) ? -v : v;
    return out;
}

}  // namespace nlse
