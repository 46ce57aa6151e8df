#pragma once

// Direct propagation of the coupled equations from arbitrary initial data.
// Second-order Strang splitting per step dt:
//
//   half step of the local operator  i psi_t = A(t) psi + V psi + N(psi,x,t) psi
//     (LC + BLG + potential + cubic term; advanced pointwise by classical RK4,
//      since the coefficients vary inside the step),
//   full dispersive step i psi_t = -psi_xx by spectral multiplication under
//     periodic boundary conditions,
//   half local step.
//
// Growth is legitimate here (exceptional-point regimes grow like t^2); the
// integrator throws BlowupError only past max |psi| = 1e6.

#include <cstdint>
#include <span>

#include "nlse/grid.hpp"
#include "nlse/matrix2.hpp"
#include "nlse/modulation.hpp"
#include "nlse/solutions.hpp"
#include "nlse/verify.hpp"

namespace nlse {

enum class BoundaryKind { Periodic, AbsorbingMask };

struct EvolveConfig {
    GridSpec grid;  // t_samples ignored; x range defines the periodic cell
    double dt = 1e-3;
    double t_final = 10.0;
    BoundaryKind boundary = BoundaryKind::Periodic;
    double mask_width = 0.0;     // damping layer width (AbsorbingMask)
    double mask_strength = 5.0;  // peak damping rate in the layer
    int record_stride = 100;     // frames recorded every this many steps

    void validate() const {
        grid.validate();
        if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
        if (!(t_final > 0.0)) throw std::invalid_argument("evolve: t_final must be positive");
        if (record_stride < 1) throw std::invalid_argument("evolve: record_stride must be >= 1");
        if (boundary == BoundaryKind::AbsorbingMask && !(mask_width > 0.0)) {
            throw std::invalid_argument("evolve: absorbing mask needs a positive width");
        }
    }
};

// Periodic boundary requires initial data that decays at the domain edges or
// is genuinely periodic; the dispersive step assumes it.
Trajectory integrate(std::span<const Vec2c> psi0, const CouplingConfig& cfg,
                     const AmplitudeVector& w, const ModulationSpec& spec,
                     const PotentialSpec& potential, const EvolveConfig& evolve_cfg);

// Evolves the exact solution and a multiplicatively perturbed copy
// psi0 (1 + amplitude (n1 + i n2)) under the full nonlinear flow and reports
// the deviation between the two runs relative to the initial perturbation.
struct GrowthReport {
    double max_ratio = 0.0;    // max_t |Psi_pert - Psi_ref| / |delta(0)|
    double final_ratio = 0.0;
    double t_at_max = 0.0;
    double perturbation_norm0 = 0.0;
};

GrowthReport stability_probe(const ExactSolution& sol, double amplitude, std::uint64_t seed,
                             const EvolveConfig& evolve_cfg);

// ---- power-curve classification ----------------------------------------------

enum class PowerClass { Flat, Bounded, BoundedOscillating, Unbounded };

struct PowerClassification {
    PowerClass label;
    double span_rel;         // (max-min)/P(0) over the whole run
    double late_span_rel;    // same over the last half
    double ratio_final;      // P(end)/P(0)
    double growth_exponent;  // ln-ln slope over the last half (0 when not grown)
    int late_extrema;        // oscillation count over the last half
};

PowerClassification classify_power(std::span<const double> t, std::span<const double> p);

const char* to_string(PowerClass c);

// Least-squares slope of ln(P - P(0)) vs ln t over [t_lo, t_hi]: the growth
// exponent of the secular part above the conserved baseline.
double fit_growth_exponent(std::span<const double> t, std::span<const double> p, double t_lo,
                           double t_hi);

std::vector<double> power_series(const Trajectory& traj);

}  // namespace nlse
