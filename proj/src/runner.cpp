#include "nlse/runner.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <semaphore>
#include <thread>

#include "nlse/csvio.hpp"
#include "nlse/errors.hpp"
#include "nlse/evolve.hpp"
#include "nlse/verify.hpp"

namespace nlse {

namespace fs = std::filesystem;

int thread_cap() {
    if (const char* env = std::getenv("NLSE_FORGE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

std::string solution_metadata(const ExactSolution& sol) {
    std::ostringstream os;
    const SpectralRegime regime = classify_regime(sol.coupling());
    os << "energy: " << format_double(sol.energy()) << "\n"
       << "similarity_m: " << format_double(sol.similarity_m()) << "\n"
       << "sigma: " << format_double(sol.sigma()) << "\n"
       << "phase_constant_c: " << format_double(sol.phase_constant()) << "\n"
       << "regime: "
       << (regime.tag == RegimeTag::PositiveEps
               ? "positive_eps"
               : (regime.tag == RegimeTag::ZeroEps ? "zero_eps" : "imaginary_eps"))
       << "\n"
       << "eps0: " << format_double(regime.eps0) << "\n";
    for (const std::string& note : sol.notes()) os << "note: " << note << "\n";
    return os.str();
}

void run_construct(const RunConfig& cfg, std::ostream& log) {
    const ExactSolution sol = make_solution(cfg);
    const GridSpec grid = cfg.grid();
    const std::vector<double> xs = grid.xs();
    const ExactSolution::Profile prof = sol.profile(xs);

    CsvWriter csv(join(cfg.out_dir, "solution.csv"),
                  {"x", "r", "theta", "re_psi1", "im_psi1", "re_psi2", "im_psi2"});
    const double t0 = grid.t_samples.empty() ? 0.0 : grid.t_samples.front();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Vec2c psi = sol.psi_from(prof.r[i], prof.theta[i], t0);
        csv.row({xs[i], prof.r[i], prof.theta[i], psi.c1.real(), psi.c1.imag(), psi.c2.real(),
                 psi.c2.imag()});
    }
    csv.close();

    // Power factor over the time samples, for the oscillation diagnostics.
    if (!grid.t_samples.empty()) {
        CsvWriter pcsv(join(cfg.out_dir, "power_factor.csv"), {"t", "p1"});
        for (const double t : grid.t_samples) {
            pcsv.row({t, p1_factor(sol.coupling(), sol.amplitude(), t)});
        }
        pcsv.close();
    }
    write_text(join(cfg.out_dir, "metadata.txt"), solution_metadata(sol));
    log << "construct: wrote solution.csv, power_factor.csv, metadata.txt\n";
}

void run_verify(const RunConfig& cfg, std::ostream& log) {
    const ExactSolution sol = make_solution(cfg);
    const GridSpec grid = cfg.grid();
    const ModulationSpec spec = make_modulation(cfg, sol);
    ResidualOptions opts;
    opts.threads = cfg.verify_fields ? 1 : thread_cap();
    const ResidualReport rep = pde_residual(exact_row_sampler(sol, grid), sol.coupling(),
                                            sol.amplitude(), spec, sol.potential(), grid, opts);
    write_text(join(cfg.out_dir, "residual_report.txt"), rep.to_text());
    const double power_dev = power_check(sol, grid);
    std::ostringstream extra;
    extra << "power_factorization_max_dev: " << format_double(power_dev) << "\n";
    write_text(join(cfg.out_dir, "power_check.txt"), extra.str());
    log << "verify: max residual " << rep.max_abs_overall() << " (masked), "
        << std::max(rep.max_abs_unmasked[0], rep.max_abs_unmasked[1]) << " (unmasked), "
        << rep.points_masked << " points masked\n";
    log << "verify: power factorization max deviation " << power_dev << "\n";
}

void write_trajectory(const std::string& dir, const Trajectory& traj) {
    CsvWriter csv(join(dir, "trajectory.csv"),
                  {"t", "x", "re_psi1", "im_psi1", "re_psi2", "im_psi2"});
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        for (std::size_t i = 0; i < traj.xs.size(); ++i) {
            const Vec2c& p = traj.frames[k][i];
            csv.row({traj.times[k], traj.xs[i], p.c1.real(), p.c1.imag(), p.c2.real(),
                     p.c2.imag()});
        }
    }
    csv.close();
    CsvWriter pcsv(join(dir, "power.csv"), {"t", "power"});
    const std::vector<double> p = power_series(traj);
    for (std::size_t k = 0; k < traj.times.size(); ++k) pcsv.row({traj.times[k], p[k]});
    pcsv.close();
}

int run_evolve(const RunConfig& cfg, std::ostream& log) {
    const ExactSolution sol = make_solution(cfg);
    const EvolveConfig ecfg = cfg.evolve();
    const ModulationSpec spec = make_modulation(cfg, sol);
    const std::vector<double> xs = ecfg.grid.xs();
    const ExactSolution::Profile prof = sol.profile(xs);
    std::vector<Vec2c> psi0(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        psi0[i] = sol.psi_from(prof.r[i], prof.theta[i], 0.0);
    }
    try {
        const Trajectory traj =
            integrate(psi0, sol.coupling(), sol.amplitude(), spec, sol.potential(), ecfg);
        write_trajectory(cfg.out_dir, traj);
        const std::vector<double> p = power_series(traj);
        const PowerClassification cls = classify_power(traj.times, p);
        std::ostringstream os;
        os << "classification: " << to_string(cls.label) << "\n"
           << "span_rel: " << format_double(cls.span_rel) << "\n"
           << "late_span_rel: " << format_double(cls.late_span_rel) << "\n"
           << "ratio_final: " << format_double(cls.ratio_final) << "\n"
           << "growth_exponent: " << format_double(cls.growth_exponent) << "\n"
           << "late_extrema: " << cls.late_extrema << "\n";
        write_text(join(cfg.out_dir, "classification.txt"), os.str());
        log << "evolve: " << to_string(cls.label) << ", P(end)/P(0) = " << cls.ratio_final
            << "\n";
    } catch (const BlowupError& e) {
        std::ostringstream os;
        os << "classification: blowup\n"
           << "t_blowup: " << format_double(e.t_blowup) << "\n"
           << "max_amplitude: " << format_double(e.max_amplitude) << "\n";
        write_text(join(cfg.out_dir, "classification.txt"), os.str());
        log << "evolve: blow-up at t = " << e.t_blowup << "\n";
        if (!cfg.allow_blowup) return 3;
    }

    if (cfg.probe_amplitude > 0.0) {
        const GrowthReport rep = stability_probe(sol, cfg.probe_amplitude, cfg.seed, ecfg);
        std::ostringstream os;
        os << "perturbation_norm0: " << format_double(rep.perturbation_norm0) << "\n"
           << "max_ratio: " << format_double(rep.max_ratio) << "\n"
           << "t_at_max: " << format_double(rep.t_at_max) << "\n"
           << "final_ratio: " << format_double(rep.final_ratio) << "\n";
        write_text(join(cfg.out_dir, "growth.txt"), os.str());
        log << "probe: max growth ratio " << rep.max_ratio << "\n";
    }
    return 0;
}

struct SweepCell {
    double gamma, beta;
    std::string label;
    double span_rel, ratio_final, growth_exponent;
};

void run_sweep(const RunConfig& cfg, std::ostream& log) {
    const int ng = cfg.sweep_gamma_steps;
    const int nb = cfg.sweep_beta_steps;
    std::vector<SweepCell> cells(static_cast<std::size_t>(ng) * nb);
    EvolveConfig ecfg = cfg.evolve();
    ecfg.t_final = cfg.sweep_t_final;

    const int cap = thread_cap();
    std::counting_semaphore<256> slots(std::min(cap, 256));
    std::vector<std::future<void>> futs;
    for (int ig = 0; ig < ng; ++ig) {
        for (int ib = 0; ib < nb; ++ib) {
            const std::size_t idx = static_cast<std::size_t>(ig) * nb + ib;
            futs.push_back(std::async(std::launch::async, [&, ig, ib, idx]() {
                slots.acquire();
                RunConfig cell_cfg = cfg;
                cell_cfg.coupling.gamma =
                    ng == 1 ? cfg.sweep_gamma_min
                            : cfg.sweep_gamma_min + (cfg.sweep_gamma_max - cfg.sweep_gamma_min) *
                                                        ig / (ng - 1);
                cell_cfg.coupling.beta_abs =
                    nb == 1 ? cfg.sweep_beta_min
                            : cfg.sweep_beta_min +
                                  (cfg.sweep_beta_max - cfg.sweep_beta_min) * ib / (nb - 1);
                SweepCell& cell = cells[idx];
                cell.gamma = cell_cfg.coupling.gamma;
                cell.beta = cell_cfg.coupling.beta_abs;
                try {
                    const ExactSolution sol = make_solution(cell_cfg);
                    const ModulationSpec spec = make_modulation(cell_cfg, sol);
                    const std::vector<double> xs = ecfg.grid.xs();
                    const ExactSolution::Profile prof = sol.profile(xs);
                    std::vector<Vec2c> psi0(xs.size());
                    for (std::size_t i = 0; i < xs.size(); ++i) {
                        psi0[i] = sol.psi_from(prof.r[i], prof.theta[i], 0.0);
                    }
                    const Trajectory traj = integrate(psi0, sol.coupling(), sol.amplitude(),
                                                      spec, sol.potential(), ecfg);
                    const std::vector<double> p = power_series(traj);
                    const PowerClassification cls = classify_power(traj.times, p);
                    cell.label = to_string(cls.label);
                    cell.span_rel = cls.span_rel;
                    cell.ratio_final = cls.ratio_final;
                    cell.growth_exponent = cls.growth_exponent;
                } catch (const BlowupError&) {
                    cell.label = "blowup";
                    cell.span_rel = cell.ratio_final = cell.growth_exponent = -1.0;
                }
                slots.release();
            }));
        }
    }
    for (auto& f : futs) f.get();

    // Single-threaded reducer keeps the heatmap deterministic.
    std::ofstream out(join(cfg.out_dir, "sweep.csv"));
    if (!out) throw Error("cannot write sweep.csv");
    out << "gamma,beta_abs,classification,span_rel,ratio_final,growth_exponent\n";
    for (const SweepCell& c : cells) {
        out << format_double(c.gamma) << "," << format_double(c.beta) << "," << c.label << ","
            << format_double(c.span_rel) << "," << format_double(c.ratio_final) << ","
            << format_double(c.growth_exponent) << "\n";
    }
    log << "sweep: " << cells.size() << " cells -> sweep.csv\n";
}

void run_susy(const RunConfig& cfg, std::ostream& log) {
    const Superpotential h = make_superpotential(cfg);
    GridSpec grid = cfg.grid();
    grid.t_samples.clear();
    const ZeroMode zm = zero_mode(h, grid);
    const std::vector<PhaseSingularity> flags = phase_singularity_scan(h, grid);

    CsvWriter pot(join(cfg.out_dir, "potential.csv"), {"x", "h", "re_v", "im_v", "v_eff"});
    for (const double x : zm.x) {
        const cplx v = complex_potential(h, x);
        pot.row({x, h_value(h, x), v.real(), v.imag(), effective_potential(h, x)});
    }
    pot.close();

    CsvWriter mode(join(cfg.out_dir, "zero_mode.csv"), {"x", "r0", "theta"});
    for (std::size_t i = 0; i < zm.x.size(); ++i) {
        mode.row({zm.x[i], zm.r0[i], zm.theta[i]});
    }
    mode.close();

    std::ostringstream os;
    os << "singularities: " << flags.size() << "\n";
    for (const PhaseSingularity& f : flags) {
        const char* kind = f.kind == PhaseSingularity::Kind::LowerEnd
                               ? "lower_end"
                               : (f.kind == PhaseSingularity::Kind::UpperEnd ? "upper_end"
                                                                             : "interior");
        os << "flag: " << kind << " x=" << format_double(f.x)
           << " theta=" << format_double(f.theta_value)
           << " amp_ratio=" << format_double(f.amp_ratio) << "\n";
    }
    write_text(join(cfg.out_dir, "singularities.txt"), os.str());
    log << "susy: " << flags.size() << " singularity flag(s)\n";
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    try {
        fs::create_directories(cfg.out_dir);
        write_text(join(cfg.out_dir, "config_echo.cfg"), echo_config(cfg));
        switch (cfg.command) {
            case Command::Construct:
                run_construct(cfg, log);
                return 0;
            case Command::Verify:
                run_verify(cfg, log);
                return 0;
            case Command::Evolve:
                return run_evolve(cfg, log);
            case Command::Sweep:
                run_sweep(cfg, log);
                return 0;
            case Command::Susy:
                run_susy(cfg, log);
                return 0;
        }
        return 1;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return 1;
    } catch (const BlowupError& e) {
        log << "blow-up: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        log << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        log << "failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace nlse
