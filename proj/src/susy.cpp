#include "nlse/susy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlse/errors.hpp"
#include "nlse/quadrature.hpp"

namespace nlse {

namespace {

double box_clamp(const SuperBox& b, double x) {
    const double delta = SuperBox::kClampFraction * b.l;
    return std::clamp(x, delta, b.l - delta);
}

double tab_interp(const std::vector<double>& xs, const std::vector<double>& vs, double x) {
    if (x < xs.front() || x > xs.back()) throw TableRangeError("x outside tabulated range");
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i =
        std::min<std::size_t>(xs.size() - 1, std::max<std::ptrdiff_t>(1, it - xs.begin())) - 1;
    const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return vs[i] * (1.0 - w) + vs[i + 1] * w;
}

}  // namespace

double h_value(const Superpotential& sp, double x) {
    return std::visit(
        [x](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SuperPolynomial>) {
                return v.w0 + v.w1 * x + v.w2 * x * x * x;
            } else if constexpr (std::is_same_v<T, SuperExponential>) {
                return v.a - v.b * std::exp(-v.rate * x);
            } else if constexpr (std::is_same_v<T, SuperBox>) {
                const double xc = box_clamp(v, x);
                return -(M_PI / v.l) / std::tan(M_PI * xc / v.l);
            } else if constexpr (std::is_same_v<T, SuperRosenMorse>) {
                return v.n * std::tanh(x);
            } else {
                return tab_interp(v.x, v.h, x);
            }
        },
        sp);
}

double h_derivative(const Superpotential& sp, double x) {
    return std::visit(
        [x, &sp](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SuperPolynomial>) {
                return v.w1 + 3.0 * v.w2 * x * x;
            } else if constexpr (std::is_same_v<T, SuperExponential>) {
                return v.rate * v.b * std::exp(-v.rate * x);
            } else if constexpr (std::is_same_v<T, SuperBox>) {
                const double xc = box_clamp(v, x);
                const double s = std::sin(M_PI * xc / v.l);
                return (M_PI * M_PI) / (v.l * v.l) / (s * s);
            } else if constexpr (std::is_same_v<T, SuperRosenMorse>) {
                const double c = std::cosh(x);
                return v.n / (c * c);
            } else {
                // centered difference on the table spacing
                if (v.x.size() < 2) throw std::invalid_argument("tabulated h too short");
                const double hstep = (v.x.back() - v.x.front()) / (v.x.size() - 1);
                const double lo = std::max(v.x.front(), x - hstep);
                const double hi = std::min(v.x.back(), x + hstep);
                return (h_value(sp, hi) - h_value(sp, lo)) / (hi - lo);
            }
        },
        sp);
}

double theta_integral(const Superpotential& sp, double x) {
    return std::visit(
        [x, &sp](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SuperPolynomial>) {
                return v.w0 * x + 0.5 * v.w1 * x * x + 0.25 * v.w2 * x * x * x * x;
            } else if constexpr (std::is_same_v<T, SuperExponential>) {
                return v.a * x + v.b / v.rate * (std::exp(-v.rate * x) - 1.0);
            } else if constexpr (std::is_same_v<T, SuperBox>) {
                const double xc = box_clamp(v, x);
                return -std::log(std::sin(M_PI * xc / v.l));  // zero at x = L/2
            } else if constexpr (std::is_same_v<T, SuperRosenMorse>) {
                return v.n * std::log(std::cosh(x));
            } else {
                const double anchor = std::clamp(0.0, v.x.front(), v.x.back());
                return integrate_adaptive([&sp](double s) { return h_value(sp, s); }, anchor, x,
                                          1e-12);
            }
        },
        sp);
}

cplx complex_potential(const Superpotential& sp, double x) {
    if (const auto* b = std::get_if<SuperBox>(&sp)) {
        if (x <= 0.0 || x >= b->l) {
            throw std::domain_error("box superpotential is not differentiable at the endpoints");
        }
    }
    const double hx = h_derivative(sp, x);
    const double h = h_value(sp, x);
    return {-hx, hx - 2.0 * h * h};
}

double effective_potential(const Superpotential& sp, double x) {
    const double h = h_value(sp, x);
    return h * h - h_derivative(sp, x);
}

ZeroMode zero_mode(const Superpotential& sp, const GridSpec& grid) {
    grid.validate();
    ZeroMode zm;
    zm.x = grid.xs();
    zm.theta.resize(zm.x.size());
    zm.r0.resize(zm.x.size());
    double theta_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < zm.x.size(); ++i) {
        zm.theta[i] = theta_integral(sp, zm.x[i]);
        theta_min = std::min(theta_min, zm.theta[i]);
    }
    // Raw amplitudes relative to the peak, to postpone overflow/underflow.
    double max_amp = 0.0;
    for (std::size_t i = 0; i < zm.x.size(); ++i) {
        zm.r0[i] = std::exp(-(zm.theta[i] - theta_min));
        max_amp = std::max(max_amp, zm.r0[i]);
    }

    // Normalizability: both tails must have decayed and be non-increasing
    // outward over the outer tenth of the grid.
    const std::size_t n = zm.r0.size();
    const std::size_t tail = std::max<std::size_t>(2, n / 10);
    auto tail_ok = [&](bool upper) {
        const double edge = upper ? zm.r0[n - 1] : zm.r0[0];
        if (edge > 0.2 * max_amp) return false;
        for (std::size_t j = 0; j + 1 < tail; ++j) {
            const std::size_t a = upper ? n - 1 - j : j;
            const std::size_t b = upper ? a - 1 : a + 1;
            if (zm.r0[a] > zm.r0[b] * (1.0 + 1e-12)) return false;  // must grow inward
        }
        return true;
    };
    if (!tail_ok(false) || !tail_ok(true)) {
        throw NotNormalizableError("zero mode does not decay on the working grid");
    }

    double norm_sq = 0.0;
    const double h = grid.dx();
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;  // trapezoid
        norm_sq += w * zm.r0[i] * zm.r0[i] * h;
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (double& r : zm.r0) r *= scale;
    zm.n0 = scale * std::exp(theta_min);
    return zm;
}

std::vector<PhaseSingularity> phase_singularity_scan(const Superpotential& sp,
                                                     const GridSpec& grid) {
    const ZeroMode zm = zero_mode(sp, grid);
    const std::size_t n = zm.x.size();
    const double max_amp = *std::max_element(zm.r0.begin(), zm.r0.end());
    const std::size_t tail = std::max<std::size_t>(3, n / 10);
    const double dx = grid.dx();

    std::vector<PhaseSingularity> flags;
    auto theta_monotone_outward = [&](bool upper) {
        double prev = std::abs(zm.theta[upper ? n - tail : tail - 1]);
        for (std::size_t j = tail - 1; j-- > 0;) {
            const std::size_t i = upper ? n - 1 - j : j;
            const double cur = std::abs(zm.theta[i]);
            if (cur < prev - 1e-12) return false;
            prev = cur;
        }
        return true;
    };
    auto check_end = [&](bool upper) {
        const std::size_t edge = upper ? n - 1 : 0;
        const double amp_ratio = zm.r0[edge] / max_amp;
        // A superpotential pole at/just beyond the edge makes theta gain O(1)
        // within one grid cell (box boundaries).
        const bool pole = std::abs(h_value(sp, zm.x[edge])) * dx > 0.5;
        // Tail divergence: vanished amplitude with |theta| still climbing
        // outward by more than 1 over the outer tenth (Rosen-Morse tails).
        const double inner = std::abs(zm.theta[upper ? n - tail : tail - 1]);
        const bool tail_div = amp_ratio < 1e-6 && theta_monotone_outward(upper) &&
                              std::abs(zm.theta[edge]) - inner > 1.0;
        if (pole || tail_div) {
            flags.push_back({upper ? PhaseSingularity::Kind::UpperEnd
                                   : PhaseSingularity::Kind::LowerEnd,
                             zm.x[edge], zm.theta[edge], amp_ratio});
        }
    };
    check_end(false);
    check_end(true);

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::abs(zm.theta[i]) > 50.0 && zm.r0[i] < 1e-12 * max_amp) {
            flags.push_back({PhaseSingularity::Kind::Interior, zm.x[i], zm.theta[i],
                             zm.r0[i] / max_amp});
        }
    }
    return flags;
}

}  // namespace nlse
