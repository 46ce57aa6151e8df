#pragma once

// Flat key=value run configuration with dotted section prefixes
// (coupling.gamma=0.5). '#' starts a comment; keys are checked against the
// schema and unknown keys are rejected. echo_config() emits shortest
// round-trip decimals so that an echoed config re-parses identically.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "nlse/amplitude.hpp"
#include "nlse/evolve.hpp"
#include "nlse/grid.hpp"
#include "nlse/lossgain.hpp"
#include "nlse/modulation.hpp"
#include "nlse/solutions.hpp"
#include "nlse/susy.hpp"

namespace nlse {

enum class Command { Construct, Verify, Evolve, Sweep, Susy };

struct SolutionChoice {
    enum class Kind {
        FreeElliptic,
        Soliton,
        Ermakov,
        Reflectionless,
        Quadratic,
        Scarf2,
        PeriodicComplex,
        Susy
    };
    Kind kind = Kind::Soliton;
    double sigma = -1.0;
    double q1 = 0.0, q2 = 0.0, q3 = 0.0;
    double alpha = 0.0, omega = 1.0;  // free-space elliptic
    double e = -0.5;                  // soliton E<0 / ermakov E>0 / quadratic E>0
    double c = 0.0;                   // ermakov phase constant
    int n = 1;                        // reflectionless N
    double v = 3.0;                   // Scarf-II depth
};

struct SusyChoice {
    enum class Family { Polynomial, Exponential, Box, RosenMorse };
    Family family = Family::RosenMorse;
    double w0 = 0.25, w1 = 0.25, w2 = 0.25;  // polynomial
    double a = 1.0, b = 1.0, rate = 1.0;     // exponential
    double l = 1.0;                          // box
    double n = 2.0;                          // rosen-morse
};

struct RunConfig {
    Command command = Command::Construct;
    CouplingConfig coupling;
    AmplitudeVector amplitude;
    SolutionChoice solution;
    SusyChoice susy;

    // modulation: f1 = (1+split) f, f2 = (1-split) f (for f = 0 families the
    // split is the absolute constant +-split); G = g_amplitude [* cos(g_omega_t t)]
    double mod_split = 0.0;
    double g_amplitude = 0.0;
    double g_omega_t = 0.0;

    double x_min = -20.0, x_max = 20.0;
    int n_x = 1024;
    double t_min = 0.0, t_max = 15.0;
    int t_count = 64;

    double evolve_dt = 1e-3;
    double evolve_t_final = 10.0;
    int record_stride = 100;
    BoundaryKind boundary = BoundaryKind::Periodic;
    double mask_width = 5.0;
    bool allow_blowup = false;
    double probe_amplitude = 0.0;

    bool verify_fields = false;  // also write per-point residual CSV

    double sweep_gamma_min = 0.0, sweep_gamma_max = 1.0;
    int sweep_gamma_steps = 5;
    double sweep_beta_min = 0.0, sweep_beta_max = 1.0;
    int sweep_beta_steps = 5;
    double sweep_t_final = 30.0;

    std::uint64_t seed = 0;
    std::string out_dir = ".";

    GridSpec grid() const;  // x range + t samples from (t_min, t_max, t_count)
    EvolveConfig evolve() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string echo_config(const RunConfig& cfg);

// Realize the configured objects.
ExactSolution make_solution(const RunConfig& cfg);
Superpotential make_superpotential(const RunConfig& cfg);
ModulationSpec make_modulation(const RunConfig& cfg, const ExactSolution& sol);

// c-scaled copy of a tagged field (used for f1/f2 splits that keep the mean).
SpaceField scale_field(const SpaceField& f, double factor);

}  // namespace nlse
