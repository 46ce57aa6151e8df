#include "nlse/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "nlse/errors.hpp"

namespace nlse {

namespace {

// 8th-order centered second derivative.
constexpr double kD2[9] = {-1.0 / 560.0, 8.0 / 315.0, -1.0 / 5.0,  8.0 / 5.0, -205.0 / 72.0,
                           8.0 / 5.0,    -1.0 / 5.0,  8.0 / 315.0, -1.0 / 560.0};
// 6th-order centered first derivative.
constexpr double kD1[7] = {-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0,
                           3.0 / 4.0,   -3.0 / 20.0, 1.0 / 60.0};

struct TimeSlice {
    std::array<double, 2> max_abs{}, sum_sq{}, max_abs_unmasked{};
    std::size_t kept = 0, masked = 0;
    double worst_val = -1.0, worst_x = 0.0;
    int worst_component = 0;
    double hull_lo = 0.0, hull_hi = 0.0;
    bool any_kept = false;
};

TimeSlice residual_at_time(double t, const RowSampler& psi, const CouplingConfig& cfg,
                           const AmplitudeVector& amp, const ModulationSpec& spec,
                           const GridSpec& grid, const ResidualOptions& opts,
                           const std::vector<double>& xs, const std::vector<cplx>& vvals,
                           const std::vector<double>& f1v, const std::vector<double>& f2v) {
    const int nx = grid.n_x;
    const double h = grid.dx();
    const double dt = opts.dt_stencil;

    std::vector<std::vector<Vec2c>> rows(7, std::vector<Vec2c>(nx));
    for (int j = 0; j < 7; ++j) {
        psi(t + (j - 3) * dt, rows[j]);
    }
    const std::vector<Vec2c>& row0 = rows[3];

    // Per-step phase increments for the resolvability mask.
    std::vector<double> pstep(nx - 1, 0.0);
    for (int i = 0; i + 1 < nx; ++i) {
        const double p1 = std::abs(std::arg(row0[i + 1].c1 * std::conj(row0[i].c1)));
        const double p2 = std::abs(std::arg(row0[i + 1].c2 * std::conj(row0[i].c2)));
        pstep[i] = std::max(p1, p2);
    }

    const auto [wfp, wfm] = w_f_w(cfg, amp, t);
    if (std::abs(wfp) < 1e-14 || std::abs(wfm) < 1e-14) {
        throw DegenerateWeightError("W^dag F_pm W vanished at a verification time");
    }
    const double mu0 = cfg.mu0_value(t);
    const cplx k_t = mu0 * cfg.beta();
    const double gamma_t = mu0 * cfg.gamma;

    TimeSlice out;
    const int lo = opts.margin, hi = nx - opts.margin;
    for (int i = lo; i < hi; ++i) {
        // residual_j = i dpsi_j/dt + psi_j,xx - (LC) - (BLG) - V psi_j - (nonlinear)
        Vec2c dpsi{}, lap{};
        for (int j = 0; j < 7; ++j) {
            if (kD1[j] == 0.0) continue;
            dpsi += rows[j][i] * (kD1[j] / dt);
        }
        for (int j = 0; j < 9; ++j) {
            lap += row0[i + j - 4] * (kD2[j] / (h * h));
        }
        const Vec2c& p = row0[i];
        const double a1 = std::norm(p.c1);
        const double a2 = std::norm(p.c2);
        const double gx = eval(spec.g, xs[i], t);
        const double g11 = (f1v[i] + gx) / (2.0 * wfp);
        const double g21 = (f1v[i] - gx) / (2.0 * wfp);
        const double g22 = (f2v[i] + gx) / (2.0 * wfm);
        const double g12 = (f2v[i] - gx) / (2.0 * wfm);

        const cplx r1 = cplx(0, 1) * dpsi.c1 + lap.c1 - std::conj(k_t) * p.c2 -
                        cplx(0, gamma_t) * p.c1 - vvals[i] * p.c1 - (g11 * a1 + g12 * a2) * p.c1;
        const cplx r2 = cplx(0, 1) * dpsi.c2 + lap.c2 - k_t * p.c1 + cplx(0, gamma_t) * p.c2 -
                        vvals[i] * p.c2 - (g21 * a1 + g22 * a2) * p.c2;

        const double m1 = std::abs(r1), m2 = std::abs(r2);
        out.max_abs_unmasked[0] = std::max(out.max_abs_unmasked[0], m1);
        out.max_abs_unmasked[1] = std::max(out.max_abs_unmasked[1], m2);

        bool resolvable = true;
        for (int j = i - 4; j < i + 4; ++j) {
            if (pstep[j] > opts.max_phase_step) {
                resolvable = false;
                break;
            }
        }
        if (!resolvable) {
            ++out.masked;
            continue;
        }
        ++out.kept;
        if (!out.any_kept) {
            out.any_kept = true;
            out.hull_lo = out.hull_hi = xs[i];
        } else {
            out.hull_lo = std::min(out.hull_lo, xs[i]);
            out.hull_hi = std::max(out.hull_hi, xs[i]);
        }
        out.max_abs[0] = std::max(out.max_abs[0], m1);
        out.max_abs[1] = std::max(out.max_abs[1], m2);
        out.sum_sq[0] += m1 * m1;
        out.sum_sq[1] += m2 * m2;
        const double worst_here = std::max(m1, m2);
        if (worst_here > out.worst_val) {
            out.worst_val = worst_here;
            out.worst_x = xs[i];
            out.worst_component = m1 >= m2 ? 0 : 1;
        }
    }
    return out;
}

}  // namespace

ResidualReport pde_residual(const RowSampler& psi, const CouplingConfig& cfg,
                            const AmplitudeVector& amp, const ModulationSpec& spec,
                            const PotentialSpec& potential, const GridSpec& grid,
                            const ResidualOptions& opts) {
    grid.validate();
    if (opts.margin < 4) throw std::invalid_argument("stencil needs a margin of >= 4 points");
    if (grid.n_x < 2 * opts.margin + 1) throw std::invalid_argument("grid too small for stencil");
    if (grid.t_samples.empty()) throw std::invalid_argument("no time samples to verify at");

    const std::vector<double> xs = grid.xs();
    std::vector<cplx> vvals(grid.n_x);
    std::vector<double> f1v(grid.n_x), f2v(grid.n_x);
    for (int i = 0; i < grid.n_x; ++i) {
        vvals[i] = potential_value(potential, xs[i]);
        f1v[i] = eval(spec.f1, xs[i]);
        f2v[i] = eval(spec.f2, xs[i]);
    }

    const std::size_t nt = grid.t_samples.size();
    std::vector<TimeSlice> slices(nt);
    const int threads = std::max(1, opts.threads);
    if (threads == 1 || nt == 1) {
        for (std::size_t k = 0; k < nt; ++k) {
            slices[k] = residual_at_time(grid.t_samples[k], psi, cfg, amp, spec, grid, opts, xs,
                                         vvals, f1v, f2v);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&]() {
                for (std::size_t k = next.fetch_add(1); k < nt; k = next.fetch_add(1)) {
                    slices[k] = residual_at_time(grid.t_samples[k], psi, cfg, amp, spec, grid,
                                                 opts, xs, vvals, f1v, f2v);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    ResidualReport rep;
    rep.margin = opts.margin;
    rep.dt_stencil = opts.dt_stencil;
    rep.max_phase_step = opts.max_phase_step;
    double worst = -1.0;
    bool any = false;
    std::array<double, 2> sum_sq{};
    for (std::size_t k = 0; k < nt; ++k) {
        const TimeSlice& s = slices[k];
        for (int c = 0; c < 2; ++c) {
            rep.max_abs[c] = std::max(rep.max_abs[c], s.max_abs[c]);
            rep.max_abs_unmasked[c] = std::max(rep.max_abs_unmasked[c], s.max_abs_unmasked[c]);
            sum_sq[c] += s.sum_sq[c];
        }
        rep.points_evaluated += s.kept;
        rep.points_masked += s.masked;
        if (s.any_kept) {
            if (!any) {
                any = true;
                rep.resolvable_x_min = s.hull_lo;
                rep.resolvable_x_max = s.hull_hi;
            } else {
                rep.resolvable_x_min = std::min(rep.resolvable_x_min, s.hull_lo);
                rep.resolvable_x_max = std::max(rep.resolvable_x_max, s.hull_hi);
            }
        }
        if (s.worst_val > worst) {
            worst = s.worst_val;
            rep.worst_x = s.worst_x;
            rep.worst_t = grid.t_samples[k];
            rep.worst_component = s.worst_component;
        }
    }
    if (rep.points_evaluated > 0) {
        rep.l2[0] = std::sqrt(sum_sq[0] / rep.points_evaluated);
        rep.l2[1] = std::sqrt(sum_sq[1] / rep.points_evaluated);
    }
    return rep;
}

std::string ResidualReport::to_text() const {
    std::ostringstream os;
    os << "max_abs_1: " << max_abs[0] << "\n"
       << "max_abs_2: " << max_abs[1] << "\n"
       << "l2_1: " << l2[0] << "\n"
       << "l2_2: " << l2[1] << "\n"
       << "max_abs_unmasked_1: " << max_abs_unmasked[0] << "\n"
       << "max_abs_unmasked_2: " << max_abs_unmasked[1] << "\n"
       << "worst_x: " << worst_x << "\n"
       << "worst_t: " << worst_t << "\n"
       << "worst_component: " << (worst_component + 1) << "\n"
       << "x_order: " << x_order << "\n"
       << "t_order: " << t_order << "\n"
       << "dt_stencil: " << dt_stencil << "\n"
       << "margin_points: " << margin << "\n"
       << "max_phase_step: " << max_phase_step << "\n"
       << "points_evaluated: " << points_evaluated << "\n"
       << "points_masked: " << points_masked << "\n"
       << "resolvable_x_min: " << resolvable_x_min << "\n"
       << "resolvable_x_max: " << resolvable_x_max << "\n";
    return os.str();
}

RowSampler exact_row_sampler(const ExactSolution& sol, const GridSpec& grid) {
    auto solp = std::make_shared<const ExactSolution>(sol);
    auto prof = std::make_shared<const ExactSolution::Profile>(sol.profile(grid.xs()));
    return [solp, prof](double t, std::span<Vec2c> out) {
        const Mat2 u = u_matrix(solp->coupling(), t);
        const cplx rot = std::exp(cplx(0.0, -solp->energy() * t));
        const Vec2c w = solp->amplitude().w();
        for (std::size_t i = 0; i < out.size(); ++i) {
            const cplx ph = std::polar(prof->r[i], prof->theta[i]) * rot;
            out[i] = u * (w * ph);
        }
    };
}

double power_check(const ExactSolution& sol, const GridSpec& grid) {
    grid.validate();
    const std::vector<double> xs = grid.xs();
    const ExactSolution::Profile prof = sol.profile(xs);
    double worst = 0.0;
    for (const double t : grid.t_samples) {
        const double p1 = p1_factor(sol.coupling(), sol.amplitude(), t);
        const Mat2 u = u_matrix(sol.coupling(), t);
        const Vec2c w = sol.amplitude().w();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const cplx ph = std::polar(prof.r[i], prof.theta[i] - sol.energy() * t);
            const Vec2c psi = u * (w * ph);
            worst = std::max(worst, std::abs(psi.norm_sq() - p1 * prof.r[i] * prof.r[i]));
        }
    }
    return worst;
}

double charge_drift(const Trajectory& traj, const Mat2& metric) {
    if (traj.frames.empty()) throw std::invalid_argument("empty trajectory");
    double q0 = 0.0, drift = 0.0;
    for (std::size_t k = 0; k < traj.frames.size(); ++k) {
        double q = 0.0;
        for (const Vec2c& p : traj.frames[k]) {
            q += std::real(sandwich(p, metric, p));
        }
        q *= traj.dx;
        if (k == 0) {
            q0 = q;
        } else {
            drift = std::max(drift, std::abs(q - q0));
        }
    }
    return drift / std::abs(q0);
}

double qtilde_drift(const Trajectory& traj, const CouplingConfig& cfg) {
    return charge_drift(traj, eta_metric(cfg));
}

double plain_q_drift(const Trajectory& traj) {
    return charge_drift(traj, Mat2::identity());
}

}  // namespace nlse
