#pragma once

// Independent checks on candidate solutions: direct substitution into the
// coupled equations with high-order finite differences (8th order in x; 6th
// order in t, re-evaluating the sampler at t +- j*dt rather than storing
// snapshots), the power factorization identity, and conserved-charge drift.
//
// Sampled finite differences are meaningless where the field oscillates
// faster than the grid can represent, so each report carries a resolvability
// mask: a point enters the masked norms only if every grid step its stencil
// touches advances the phase of both components by at most max_phase_step.
// Smooth solutions keep every interior point (points_masked == 0); the
// quadratic-potential family loses its super-oscillatory Gaussian tails and
// the report says exactly where.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlse/grid.hpp"
#include "nlse/matrix2.hpp"
#include "nlse/modulation.hpp"
#include "nlse/solutions.hpp"

namespace nlse {

// Fills psi over grid.xs() at time t.
using RowSampler = std::function<void(double t, std::span<Vec2c> out)>;

struct ResidualOptions {
    int margin = 4;               // boundary points excluded per side (>= stencil half-width)
    double dt_stencil = 0.02;     // spacing of the 6th-order time stencil
    double max_phase_step = 0.25; // resolvability threshold, radians per grid step
    int threads = 1;              // parallelize over time samples
};

struct ResidualReport {
    std::array<double, 2> max_abs{};          // per component, masked interior
    std::array<double, 2> l2{};               // RMS per component, masked interior
    std::array<double, 2> max_abs_unmasked{}; // per component, all interior points
    double worst_x = 0.0, worst_t = 0.0;
    int worst_component = 0;
    int margin = 4;
    int x_order = 8, t_order = 6;
    double dt_stencil = 0.0;
    double max_phase_step = 0.0;
    std::size_t points_evaluated = 0, points_masked = 0;
    double resolvable_x_min = 0.0, resolvable_x_max = 0.0;  // hull of kept points

    double max_abs_overall() const { return std::max(max_abs[0], max_abs[1]); }
    std::string to_text() const;  // "key: value" lines
};

ResidualReport pde_residual(const RowSampler& psi, const CouplingConfig& cfg,
                            const AmplitudeVector& w, const ModulationSpec& spec,
                            const PotentialSpec& potential, const GridSpec& grid,
                            const ResidualOptions& opts = {});

// Row sampler backed by a constructed solution (profile cached on the grid).
RowSampler exact_row_sampler(const ExactSolution& sol, const GridSpec& grid);

// max over the grid and t_samples of | Psi^dag Psi - P1(t) R^2(x) |.
double power_check(const ExactSolution& sol, const GridSpec& grid);

struct Trajectory {
    std::vector<double> xs;
    double dx = 0.0;
    std::vector<double> times;
    std::vector<std::vector<Vec2c>> frames;
};

// Relative drift max_t |Q(t) - Q(0)| / |Q(0)| of Q = int Psi^dag M Psi dx.
double charge_drift(const Trajectory& traj, const Mat2& metric);

// Q~ with the pseudo-hermiticity metric eta (throws NoMetricError via
// eta_metric when |beta| <= Gamma).
double qtilde_drift(const Trajectory& traj, const CouplingConfig& cfg);

// Plain power drift (metric = identity), the negative control.
double plain_q_drift(const Trajectory& traj);

}  // namespace nlse
