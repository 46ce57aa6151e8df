#pragma once

// Time-modulated balanced loss-gain (BLG) and linear coupling (LC) in gauge
// form. With k(t) = mu0(t) beta and gamma(t) = mu0(t) Gamma the gauge
// potential is A(t) = mu0(t) A0,
//
//     A0 = beta sigma_- + beta* sigma_+ + i Gamma sigma3,
//     A0^2 = (|beta|^2 - Gamma^2) sigma0 = eps0^2 sigma0,  tr A0 = 0.
//
// The non-unitary transform solving dU/dt = -i A U with U(0) = identity is
// U = exp(-i mu(t) A0), mu(t) = int_0^t mu0. Because A0 squares to a scalar,
// all three spectral regimes (|beta| >, =, < Gamma) are one analytic kernel
//
//     U = cos1(z) sigma0 - i mu sinc1(z) A0,   z = mu^2 (|beta|^2 - Gamma^2),
//
// with cos1/sinc1 the entire functions cos(sqrt(z)) and sin(sqrt(z))/sqrt(z)
// continued through z <= 0 (hyperbolic branch). det U = 1 in every regime.

#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "nlse/amplitude.hpp"
#include "nlse/matrix2.hpp"

namespace nlse {

// ---- time-modulation families for mu0(t) ----------------------------------

struct Mu0Constant {
    double value = 1.0;
};
struct Mu0Cosine {
    double omega0 = 1.0;  // mu0 = cos(omega0 t), mu = sin(omega0 t)/omega0
};
struct Mu0Gaussian {};  // mu0 = (2/sqrt(pi)) e^{-t^2}, mu = erf(t)

// Sampled mu0 with linear interpolation; mu is the exact integral of the
// interpolant. Queries outside [t.front(), t.back()] raise TableRangeError.
struct Mu0Tabulated {
    std::vector<double> t;
    std::vector<double> mu0;
};

using Mu0Family = std::variant<Mu0Constant, Mu0Cosine, Mu0Gaussian, Mu0Tabulated>;

// ---- coupling configuration ------------------------------------------------

struct CouplingConfig {
    double gamma = 0.0;     // Gamma, BLG strength scale (real)
    double beta_abs = 0.0;  // |beta| >= 0, LC strength scale
    double theta3 = 0.0;    // phase of beta = |beta| e^{i theta3}
    Mu0Family mu0 = Mu0Constant{};

    void validate() const;
    cplx beta() const { return beta_abs * std::exp(cplx(0.0, theta3)); }
    double eps0_sq() const { return beta_abs * beta_abs - gamma * gamma; }
    Mat2 a0() const;                  // the constant gauge matrix A0
    Mat2 a_of_t(double t) const;      // A(t) = mu0(t) A0
    double mu0_value(double t) const; // mu0(t)
};

enum class RegimeTag { PositiveEps, ZeroEps, ImaginaryEps };

struct SpectralRegime {
    RegimeTag tag;
    double eps0;  // sqrt(|eps0^2|); 0 in the ZeroEps regime
};

// |eps0^2| < 1e-12 classifies as ZeroEps.
SpectralRegime classify_regime(const CouplingConfig& cfg);

// mu(t) = int_0^t mu0 and eps(t) = mu(t) eps0 (eps0 = sqrt(|eps0^2|); in the
// imaginary regime the returned eps is |eps0| mu, the hyperbolic argument).
std::pair<double, double> mu_epsilon(const CouplingConfig& cfg, double t);

// U(t) in the appropriate regime; always has det U = 1 and U(0) = identity.
Mat2 u_matrix(const CouplingConfig& cfg, double t);

// P1(t) = W^dag U^dag(t) U(t) W, valid in every regime.
double p1_factor(const CouplingConfig& cfg, const AmplitudeVector& w, double t);

// The closed form Eq-(30)-style expression
//   P1 = b0 [1 + (2 Gamma D / eps0^2) sin^2 eps + (b3 Gamma / (b0 eps0)) sin 2eps];
// requires eps0^2 > 0 (throws std::domain_error otherwise).
double p1_closed_form(const CouplingConfig& cfg, const AmplitudeVector& w, double t);

// Positive-definite eta with A0^dag eta = eta A0, normalized to tr eta = 2.
// Exists only for |beta| > Gamma; throws NoMetricError otherwise.
Mat2 eta_metric(const CouplingConfig& cfg);

namespace detail {
// Entire-function kernels in z = eps^2 (may be negative):
// cos1(z) = cos(sqrt z) / cosh(sqrt -z), sinc1(z) = sin(sqrt z)/sqrt z.
double cos1(double z);
double sinc1(double z);
}  // namespace detail

}  // namespace nlse
