#include "nlse/evolve.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "nlse/errors.hpp"

namespace nlse {

namespace {

constexpr double kBlowupAmplitude = 1e6;

// FFTW plan creation/destruction is not thread safe; execution on distinct
// arrays is.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

class SpectralStepper {
public:
    SpectralStepper(int n, double length, double dt) : n_(n) {
        buf_ = fftw_alloc_complex(n);
        {
            std::lock_guard<std::mutex> lock(fftw_mutex());
            fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        phase_.resize(n);
        for (int j = 0; j < n; ++j) {
            const int jj = (j <= n / 2) ? j : j - n;
            const double k = 2.0 * M_PI * jj / length;
            phase_[j] = std::exp(cplx(0.0, -k * k * dt)) / static_cast<double>(n);
        }
    }
    ~SpectralStepper() {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    SpectralStepper(const SpectralStepper&) = delete;
    SpectralStepper& operator=(const SpectralStepper&) = delete;

    // In-place dispersive step exp(i dt d^2/dx^2) on one component.
    void step_component(std::vector<Vec2c>& psi, int component) {
        for (int i = 0; i < n_; ++i) {
            const cplx v = component == 0 ? psi[i].c1 : psi[i].c2;
            buf_[i][0] = v.real();
            buf_[i][1] = v.imag();
        }
        fftw_execute(fwd_);
        for (int i = 0; i < n_; ++i) {
            const cplx v = cplx(buf_[i][0], buf_[i][1]) * phase_[i];
            buf_[i][0] = v.real();
            buf_[i][1] = v.imag();
        }
        fftw_execute(bwd_);
        for (int i = 0; i < n_; ++i) {
            (component == 0 ? psi[i].c1 : psi[i].c2) = cplx(buf_[i][0], buf_[i][1]);
        }
    }

private:
    int n_;
    fftw_complex* buf_;
    fftw_plan fwd_, bwd_;
    std::vector<cplx> phase_;
};

// Time-dependent scalars of the local operator, evaluated per RK4 stage.
struct StageCoeffs {
    cplx k;         // LC strength k(t)
    double gamma;   // BLG strength gamma(t)
    double wfp, wfm;
    double gtime;   // time factor of G(x,t)
};

StageCoeffs stage_coeffs(const CouplingConfig& cfg, const AmplitudeVector& amp,
                         const ModulationSpec& spec, double t) {
    StageCoeffs s;
    const double mu0 = cfg.mu0_value(t);
    s.k = mu0 * cfg.beta();
    s.gamma = mu0 * cfg.gamma;
    const auto wf = w_f_w(cfg, amp, t);
    s.wfp = wf.first;
    s.wfm = wf.second;
    if (std::abs(s.wfp) < 1e-14 || std::abs(s.wfm) < 1e-14) {
        throw DegenerateWeightError("W^dag F_pm W vanished during evolution");
    }
    s.gtime = eval(spec.g.time, t);
    return s;
}

// d psi/dt = -i [ A(t) psi + V psi + N psi ] at one grid point.
inline Vec2c local_rhs(const Vec2c& p, const StageCoeffs& s, cplx v, double f1x, double f2x,
                       double gxs) {
    const double a1 = std::norm(p.c1);
    const double a2 = std::norm(p.c2);
    const double gx = gxs * s.gtime;
    const double g11 = (f1x + gx) / (2.0 * s.wfp);
    const double g21 = (f1x - gx) / (2.0 * s.wfp);
    const double g22 = (f2x + gx) / (2.0 * s.wfm);
    const double g12 = (f2x - gx) / (2.0 * s.wfm);
    const cplx rhs1 = std::conj(s.k) * p.c2 + cplx(0.0, s.gamma) * p.c1 + v * p.c1 +
                      (g11 * a1 + g12 * a2) * p.c1;
    const cplx rhs2 = s.k * p.c1 - cplx(0.0, s.gamma) * p.c2 + v * p.c2 +
                      (g21 * a1 + g22 * a2) * p.c2;
    return {cplx(0.0, -1.0) * rhs1, cplx(0.0, -1.0) * rhs2};
}

}  // namespace

Trajectory integrate(std::span<const Vec2c> psi0, const CouplingConfig& cfg,
                     const AmplitudeVector& amp, const ModulationSpec& spec,
                     const PotentialSpec& potential, const EvolveConfig& ecfg) {
    ecfg.validate();
    cfg.validate();
    const int nx = ecfg.grid.n_x;
    if (static_cast<int>(psi0.size()) != nx) {
        throw std::invalid_argument("initial data size does not match the grid");
    }
    const double dt = ecfg.dt;
    const std::vector<double> xs = ecfg.grid.xs();

    std::vector<cplx> vvals(nx);
    std::vector<double> f1v(nx), f2v(nx), gsp(nx), mask(nx, 1.0);
    for (int i = 0; i < nx; ++i) {
        vvals[i] = potential_value(potential, xs[i]);
        f1v[i] = eval(spec.f1, xs[i]);
        f2v[i] = eval(spec.f2, xs[i]);
        gsp[i] = eval(spec.g.space, xs[i]);
    }
    if (ecfg.boundary == BoundaryKind::AbsorbingMask) {
        for (int i = 0; i < nx; ++i) {
            const double dlo = xs[i] - ecfg.grid.x_min;
            const double dhi = ecfg.grid.x_max - xs[i];
            const double d = std::min(dlo, dhi);
            if (d < ecfg.mask_width) {
                const double ramp = std::cos(0.5 * M_PI * d / ecfg.mask_width);
                mask[i] = std::exp(-dt * ecfg.mask_strength * ramp * ramp);
            }
        }
    }

    SpectralStepper stepper(nx, ecfg.grid.x_max - ecfg.grid.x_min, dt);
    std::vector<Vec2c> psi(psi0.begin(), psi0.end());
    std::vector<Vec2c> k1(nx), k2(nx), k3(nx), stage(nx);

    const auto nsteps = static_cast<long>(std::ceil(ecfg.t_final / dt - 1e-12));

    Trajectory traj;
    traj.xs = xs;
    traj.dx = ecfg.grid.dx();
    traj.times.reserve(nsteps / ecfg.record_stride + 2);
    traj.frames.reserve(nsteps / ecfg.record_stride + 2);
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.frames.push_back(psi);
    };
    record(0.0);

    // RK4 over the local operator for a half step h starting at time t0.
    auto local_half_step = [&](double t0) {
        const double h = 0.5 * dt;
        const StageCoeffs s0 = stage_coeffs(cfg, amp, spec, t0);
        const StageCoeffs sm = stage_coeffs(cfg, amp, spec, t0 + 0.5 * h);
        const StageCoeffs s1 = stage_coeffs(cfg, amp, spec, t0 + h);
        for (int i = 0; i < nx; ++i) {
            k1[i] = local_rhs(psi[i], s0, vvals[i], f1v[i], f2v[i], gsp[i]);
            stage[i] = psi[i] + k1[i] * (0.5 * h);
        }
        for (int i = 0; i < nx; ++i) {
            k2[i] = local_rhs(stage[i], sm, vvals[i], f1v[i], f2v[i], gsp[i]);
            stage[i] = psi[i] + k2[i] * (0.5 * h);
        }
        for (int i = 0; i < nx; ++i) {
            k3[i] = local_rhs(stage[i], sm, vvals[i], f1v[i], f2v[i], gsp[i]);
            stage[i] = psi[i] + k3[i] * h;
        }
        for (int i = 0; i < nx; ++i) {
            const Vec2c k4 = local_rhs(stage[i], s1, vvals[i], f1v[i], f2v[i], gsp[i]);
            psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4) * (h / 6.0);
        }
    };

    double t = 0.0;
    for (long n = 0; n < nsteps; ++n) {
        local_half_step(t);
        stepper.step_component(psi, 0);
        stepper.step_component(psi, 1);
        local_half_step(t + 0.5 * dt);
        if (ecfg.boundary == BoundaryKind::AbsorbingMask) {
            for (int i = 0; i < nx; ++i) psi[i] = psi[i] * mask[i];
        }
        t = (n + 1) * dt;

        double max_sq = 0.0;
        for (const Vec2c& p : psi) max_sq = std::max(max_sq, std::max(std::norm(p.c1), std::norm(p.c2)));
        if (max_sq > kBlowupAmplitude * kBlowupAmplitude) {
            throw BlowupError(t, std::sqrt(max_sq));
        }
        if ((n + 1) % ecfg.record_stride == 0 || n + 1 == nsteps) {
            record(t);
        }
    }
    return traj;
}

GrowthReport stability_probe(const ExactSolution& sol, double amplitude, std::uint64_t seed,
                             const EvolveConfig& ecfg) {
    const std::vector<double> xs = ecfg.grid.xs();
    const ExactSolution::Profile prof = sol.profile(xs);
    std::vector<Vec2c> ref0(xs.size()), pert0(xs.size());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ref0[i] = sol.psi_from(prof.r[i], prof.theta[i], 0.0);
        const cplx n1(gauss(rng), gauss(rng));
        const cplx n2(gauss(rng), gauss(rng));
        pert0[i] = {ref0[i].c1 * (1.0 + amplitude * n1), ref0[i].c2 * (1.0 + amplitude * n2)};
    }

    const ModulationSpec spec = ModulationSpec::symmetric(sol.f_field());
    const Trajectory ref =
        integrate(ref0, sol.coupling(), sol.amplitude(), spec, sol.potential(), ecfg);
    const Trajectory pert =
        integrate(pert0, sol.coupling(), sol.amplitude(), spec, sol.potential(), ecfg);

    GrowthReport rep;
    double delta0_sq = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        delta0_sq += (pert0[i] - ref0[i]).norm_sq();
    }
    rep.perturbation_norm0 = std::sqrt(delta0_sq * ecfg.grid.dx());
    if (rep.perturbation_norm0 == 0.0) return rep;

    for (std::size_t k = 0; k < ref.frames.size(); ++k) {
        double dev_sq = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            dev_sq += (pert.frames[k][i] - ref.frames[k][i]).norm_sq();
        }
        const double ratio = std::sqrt(dev_sq * ecfg.grid.dx()) / rep.perturbation_norm0;
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.t_at_max = ref.times[k];
        }
        rep.final_ratio = ratio;
    }
    return rep;
}

std::vector<double> power_series(const Trajectory& traj) {
    std::vector<double> p(traj.frames.size());
    for (std::size_t k = 0; k < traj.frames.size(); ++k) {
        double acc = 0.0;
        for (const Vec2c& v : traj.frames[k]) acc += v.norm_sq();
        p[k] = acc * traj.dx;
    }
    return p;
}

const char* to_string(PowerClass c) {
    switch (c) {
        case PowerClass::Flat: return "flat";
        case PowerClass::Bounded: return "bounded";
        case PowerClass::BoundedOscillating: return "bounded-oscillating";
        case PowerClass::Unbounded: return "unbounded";
    }
    return "?";
}

double fit_growth_exponent(std::span<const double> t, std::span<const double> p, double t_lo,
                           double t_hi) {
    const double p0 = p.front();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < t_lo || t[k] > t_hi) continue;
        const double growth = p[k] - p0;
        if (growth <= 0.0) continue;
        const double lx = std::log(t[k]);
        const double ly = std::log(growth);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

PowerClassification classify_power(std::span<const double> t, std::span<const double> p) {
    if (t.size() != p.size() || t.size() < 8) {
        throw std::invalid_argument("classify_power needs >= 8 samples");
    }
    PowerClassification out{};
    const double p0 = p.front();
    const auto [pmin_it, pmax_it] = std::minmax_element(p.begin(), p.end());
    out.span_rel = (*pmax_it - *pmin_it) / p0;
    out.ratio_final = p.back() / p0;

    const std::size_t half = t.size() / 2;
    double lmin = p[half], lmax = p[half];
    int extrema = 0;
    int last_sign = 0;
    for (std::size_t k = half; k < p.size(); ++k) {
        lmin = std::min(lmin, p[k]);
        lmax = std::max(lmax, p[k]);
        if (k + 1 < p.size()) {
            const double d = p[k + 1] - p[k];
            if (std::abs(d) > 1e-9 * p0) {
                const int sign = d > 0 ? 1 : -1;
                if (last_sign != 0 && sign != last_sign) ++extrema;
                last_sign = sign;
            }
        }
    }
    out.late_span_rel = (lmax - lmin) / p0;
    out.late_extrema = extrema;
    out.growth_exponent = fit_growth_exponent(t, p, t[half], t.back());

    // Monotone growth over the last half, judged on five chunk means.
    bool monotone = true;
    {
        const std::size_t chunk = std::max<std::size_t>(1, (p.size() - half) / 5);
        double prev = -1.0;
        for (std::size_t c0 = half; c0 < p.size(); c0 += chunk) {
            double mean = 0.0;
            std::size_t n = 0;
            for (std::size_t k = c0; k < std::min(p.size(), c0 + chunk); ++k, ++n) mean += p[k];
            mean /= std::max<std::size_t>(1, n);
            if (prev >= 0.0 && mean < prev) monotone = false;
            prev = mean;
        }
    }

    if (out.span_rel < 1e-3) {
        out.label = PowerClass::Flat;
    } else if (out.ratio_final > 10.0 && monotone) {
        out.label = PowerClass::Unbounded;
    } else if (out.late_extrema >= 4 && out.late_span_rel > 1e-3) {
        out.label = PowerClass::BoundedOscillating;
    } else {
        out.label = PowerClass::Bounded;
    }
    return out;
}

}  // namespace nlse
