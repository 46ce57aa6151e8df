#pragma once

// Supersymmetry-inspired construction for the f(x) = 0 pathway: from a real
// superpotential h(x), the complex potential
//
//     V(x) = -h_x + i (h_x - 2 h^2)
//
// admits the zero-energy localized mode R0 = N0 e^{-theta}, theta = int h,
// whose modulus and phase share the same theta: Phi = N0 W e^{-theta + i theta}.
// The induced effective potential is the supersymmetric partner V_eff = h^2 - h_x.

#include <variant>
#include <vector>

#include "nlse/grid.hpp"
#include "nlse/matrix2.hpp"

namespace nlse {

struct SuperPolynomial {
    double w0 = 0.0, w1 = 0.0, w2 = 0.0;  // h = w0 + w1 x + w2 x^3, all >= 0
};
struct SuperExponential {
    double a = 1.0, b = 1.0, rate = 1.0;  // h = a - b e^{-rate x}, all > 0
};
struct SuperBox {
    double l = 1.0;  // h = -(pi/L) cot(pi x / L) on (0, L)
    // Evaluation clamps x into [delta, L - delta]:
    static constexpr double kClampFraction = 1e-8;
};
struct SuperRosenMorse {
    double n = 1.0;  // h = N tanh(x), N > 0
};
struct SuperTabulated {
    std::vector<double> x;
    std::vector<double> h;  // centered differences for h_x, trapezoid for theta
};

using Superpotential =
    std::variant<SuperPolynomial, SuperExponential, SuperBox, SuperRosenMorse, SuperTabulated>;

double h_value(const Superpotential& sp, double x);
double h_derivative(const Superpotential& sp, double x);

// theta(x) = int h with theta pinned to 0 at the family's symmetry point
// (x = 0, or L/2 for the box where -ln sin is already 0 there).
double theta_integral(const Superpotential& sp, double x);

// V = -h_x + i (h_x - 2 h^2). Throws std::domain_error at non-differentiable
// points (box endpoints are clamped inward instead).
cplx complex_potential(const Superpotential& sp, double x);

// V_eff = h^2 - h_x, the partner potential whose zero mode is e^{-theta}.
double effective_potential(const Superpotential& sp, double x);

struct ZeroMode {
    std::vector<double> x;      // grid abscissae used
    std::vector<double> r0;     // N0 e^{-theta}, unit L2 norm on the grid
    std::vector<double> theta;  // the shared modulus/phase exponent
    double n0;                  // normalization applied
};

// Throws NotNormalizableError when the sampled mode does not decay at the
// grid ends (monitored via tail amplitude and monotonicity).
ZeroMode zero_mode(const Superpotential& sp, const GridSpec& grid);

struct PhaseSingularity {
    enum class Kind { LowerEnd, UpperEnd, Interior };
    Kind kind;
    double x;
    double theta_value;
    double amp_ratio;  // mode amplitude relative to its max
};

// Reporting convention: a grid end is flagged when the mode amplitude there
// is below 1e-6 of its maximum and |theta| climbs monotonically by more than
// 1 over the outer tenth of the grid; interior points flag when |theta| > 50
// with vanishing amplitude.
std::vector<PhaseSingularity> phase_singularity_scan(const Superpotential& sp,
                                                     const GridSpec& grid);

}  // namespace nlse
