#include "nlse/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nlse/csvio.hpp"
#include "nlse/errors.hpp"

namespace nlse {

GridSpec RunConfig::grid() const {
    GridSpec g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_x = n_x;
    g.t_samples = GridSpec::linspace(t_min, t_max, t_count);
    g.validate();
    return g;
}

EvolveConfig RunConfig::evolve() const {
    EvolveConfig e;
    e.grid = grid();
    e.grid.t_samples.clear();
    e.dt = evolve_dt;
    e.t_final = evolve_t_final;
    e.record_stride = record_stride;
    e.boundary = boundary;
    e.mask_width = mask_width;
    return e;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

class KeyMap {
public:
    explicit KeyMap(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config line without '=': " + line);
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("empty config key");
            if (!map_.emplace(key, value).second) {
                throw ConfigError("duplicate config key: " + key);
            }
        }
    }

    double number(const std::string& key, double def) {
        const auto it = map_.find(key);
        if (it == map_.end()) return def;
        used_.insert(key);
        const std::string& s = it->second;
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw ConfigError("bad number for " + key + ": " + s);
        }
        return v;
    }
    int integer(const std::string& key, int def) {
        const double v = number(key, def);
        const int i = static_cast<int>(v);
        if (i != v) throw ConfigError("expected integer for " + key);
        return i;
    }
    std::uint64_t unsigned64(const std::string& key, std::uint64_t def) {
        const auto it = map_.find(key);
        if (it == map_.end()) return def;
        used_.insert(key);
        std::uint64_t v = 0;
        const std::string& s = it->second;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw ConfigError("bad unsigned value for " + key + ": " + s);
        }
        return v;
    }
    std::string word(const std::string& key, const std::string& def) {
        const auto it = map_.find(key);
        if (it == map_.end()) return def;
        used_.insert(key);
        return it->second;
    }
    bool flag(const std::string& key, bool def) {
        const std::string w = word(key, def ? "1" : "0");
        if (w == "1" || w == "true") return true;
        if (w == "0" || w == "false") return false;
        throw ConfigError("expected 0/1 for " + key);
    }
    void check_all_used() const {
        for (const auto& [k, v] : map_) {
            if (!used_.count(k)) throw ConfigError("unknown config key: " + k);
        }
    }

private:
    std::map<std::string, std::string> map_;
    std::set<std::string> used_;
};

Command parse_command(const std::string& w) {
    if (w == "construct") return Command::Construct;
    if (w == "verify") return Command::Verify;
    if (w == "evolve") return Command::Evolve;
    if (w == "sweep") return Command::Sweep;
    if (w == "susy") return Command::Susy;
    throw ConfigError("unknown command: " + w);
}

const char* command_word(Command c) {
    switch (c) {
        case Command::Construct: return "construct";
        case Command::Verify: return "verify";
        case Command::Evolve: return "evolve";
        case Command::Sweep: return "sweep";
        case Command::Susy: return "susy";
    }
    return "?";
}

SolutionChoice::Kind parse_kind(const std::string& family, const std::string& kind) {
    using K = SolutionChoice::Kind;
    if (family == "free_space") {
        if (kind == "elliptic") return K::FreeElliptic;
        if (kind == "soliton") return K::Soliton;
        if (kind == "ermakov") return K::Ermakov;
        throw ConfigError("free_space solution.kind must be elliptic|soliton|ermakov");
    }
    if (family == "reflectionless") return K::Reflectionless;
    if (family == "quadratic") return K::Quadratic;
    if (family == "scarf2") return K::Scarf2;
    if (family == "periodic_complex") return K::PeriodicComplex;
    if (family == "superpotential") return K::Susy;
    throw ConfigError("unknown potential.family: " + family);
}

std::pair<std::string, std::string> family_words(SolutionChoice::Kind k) {
    using K = SolutionChoice::Kind;
    switch (k) {
        case K::FreeElliptic: return {"free_space", "elliptic"};
        case K::Soliton: return {"free_space", "soliton"};
        case K::Ermakov: return {"free_space", "ermakov"};
        case K::Reflectionless: return {"reflectionless", ""};
        case K::Quadratic: return {"quadratic", ""};
        case K::Scarf2: return {"scarf2", ""};
        case K::PeriodicComplex: return {"periodic_complex", ""};
        case K::Susy: return {"superpotential", ""};
    }
    return {"?", ""};
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    KeyMap km(text);
    RunConfig cfg;
    cfg.command = parse_command(km.word("command", "construct"));

    cfg.coupling.gamma = km.number("coupling.gamma", 0.0);
    cfg.coupling.beta_abs = km.number("coupling.beta_abs", 0.0);
    cfg.coupling.theta3 = km.number("coupling.theta3", 0.0);
    const std::string mu0 = km.word("coupling.mu0", "constant");
    if (mu0 == "constant") {
        cfg.coupling.mu0 = Mu0Constant{km.number("coupling.mu0.value", 1.0)};
    } else if (mu0 == "cosine") {
        cfg.coupling.mu0 = Mu0Cosine{km.number("coupling.mu0.omega0", 1.0)};
    } else if (mu0 == "gaussian") {
        cfg.coupling.mu0 = Mu0Gaussian{};
    } else {
        throw ConfigError("coupling.mu0 must be constant|cosine|gaussian");
    }

    cfg.amplitude.w1 = km.number("amplitude.w1", 1.0);
    cfg.amplitude.w2 = km.number("amplitude.w2", 1.0);
    cfg.amplitude.theta1 = km.number("amplitude.theta1", 0.0);
    cfg.amplitude.theta2 = km.number("amplitude.theta2", 0.0);

    const std::string family = km.word("potential.family", "free_space");
    const std::string kind = km.word("solution.kind", family == "free_space" ? "soliton" : "");
    cfg.solution.kind = parse_kind(family, kind);
    cfg.solution.sigma = km.number("solution.sigma", cfg.solution.sigma);
    cfg.solution.q1 = km.number("solution.q1", 0.0);
    cfg.solution.q2 = km.number("solution.q2", 0.0);
    cfg.solution.q3 = km.number("solution.q3", 0.0);
    cfg.solution.alpha = km.number("solution.alpha", 0.0);
    cfg.solution.omega = km.number("solution.omega", 1.0);
    cfg.solution.e = km.number("solution.e", cfg.solution.e);
    cfg.solution.c = km.number("solution.c", 0.0);
    cfg.solution.n = km.integer("potential.n", 1);
    cfg.solution.v = km.number("potential.v", 3.0);

    const std::string sf = km.word("susy.family", "rosen_morse");
    if (sf == "polynomial") {
        cfg.susy.family = SusyChoice::Family::Polynomial;
    } else if (sf == "exponential") {
        cfg.susy.family = SusyChoice::Family::Exponential;
    } else if (sf == "box") {
        cfg.susy.family = SusyChoice::Family::Box;
    } else if (sf == "rosen_morse") {
        cfg.susy.family = SusyChoice::Family::RosenMorse;
    } else {
        throw ConfigError("susy.family must be polynomial|exponential|box|rosen_morse");
    }
    cfg.susy.w0 = km.number("susy.w0", cfg.susy.w0);
    cfg.susy.w1 = km.number("susy.w1", cfg.susy.w1);
    cfg.susy.w2 = km.number("susy.w2", cfg.susy.w2);
    cfg.susy.a = km.number("susy.a", cfg.susy.a);
    cfg.susy.b = km.number("susy.b", cfg.susy.b);
    cfg.susy.rate = km.number("susy.rate", cfg.susy.rate);
    cfg.susy.l = km.number("susy.l", cfg.susy.l);
    cfg.susy.n = km.number("susy.n", cfg.susy.n);

    cfg.mod_split = km.number("modulation.split", 0.0);
    cfg.g_amplitude = km.number("modulation.g.amplitude", 0.0);
    cfg.g_omega_t = km.number("modulation.g.omega_t", 0.0);

    cfg.x_min = km.number("grid.x_min", cfg.x_min);
    cfg.x_max = km.number("grid.x_max", cfg.x_max);
    cfg.n_x = km.integer("grid.n_x", cfg.n_x);
    cfg.t_min = km.number("grid.t_min", cfg.t_min);
    cfg.t_max = km.number("grid.t_max", cfg.t_max);
    cfg.t_count = km.integer("grid.t_count", cfg.t_count);

    cfg.evolve_dt = km.number("evolve.dt", cfg.evolve_dt);
    cfg.evolve_t_final = km.number("evolve.t_final", cfg.evolve_t_final);
    cfg.record_stride = km.integer("evolve.record_stride", cfg.record_stride);
    const std::string boundary = km.word("evolve.boundary", "periodic");
    if (boundary == "periodic") {
        cfg.boundary = BoundaryKind::Periodic;
    } else if (boundary == "absorbing") {
        cfg.boundary = BoundaryKind::AbsorbingMask;
    } else {
        throw ConfigError("evolve.boundary must be periodic|absorbing");
    }
    cfg.mask_width = km.number("evolve.mask_width", cfg.mask_width);
    cfg.allow_blowup = km.flag("evolve.allow_blowup", false);
    cfg.probe_amplitude = km.number("probe.amplitude", 0.0);

    cfg.verify_fields = km.flag("verify.fields", false);

    cfg.sweep_gamma_min = km.number("sweep.gamma_min", cfg.sweep_gamma_min);
    cfg.sweep_gamma_max = km.number("sweep.gamma_max", cfg.sweep_gamma_max);
    cfg.sweep_gamma_steps = km.integer("sweep.gamma_steps", cfg.sweep_gamma_steps);
    cfg.sweep_beta_min = km.number("sweep.beta_min", cfg.sweep_beta_min);
    cfg.sweep_beta_max = km.number("sweep.beta_max", cfg.sweep_beta_max);
    cfg.sweep_beta_steps = km.integer("sweep.beta_steps", cfg.sweep_beta_steps);
    cfg.sweep_t_final = km.number("sweep.t_final", cfg.sweep_t_final);

    cfg.seed = km.unsigned64("seed", 0);
    cfg.out_dir = km.word("out_dir", ".");

    km.check_all_used();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string echo_config(const RunConfig& cfg) {
    std::ostringstream os;
    const auto num = [&](const std::string& k, double v) {
        os << k << "=" << format_double(v) << "\n";
    };
    os << "command=" << command_word(cfg.command) << "\n";
    num("coupling.gamma", cfg.coupling.gamma);
    num("coupling.beta_abs", cfg.coupling.beta_abs);
    num("coupling.theta3", cfg.coupling.theta3);
    if (const auto* c = std::get_if<Mu0Constant>(&cfg.coupling.mu0)) {
        os << "coupling.mu0=constant\n";
        num("coupling.mu0.value", c->value);
    } else if (const auto* c2 = std::get_if<Mu0Cosine>(&cfg.coupling.mu0)) {
        os << "coupling.mu0=cosine\n";
        num("coupling.mu0.omega0", c2->omega0);
    } else {
        os << "coupling.mu0=gaussian\n";
    }
    num("amplitude.w1", cfg.amplitude.w1);
    num("amplitude.w2", cfg.amplitude.w2);
    num("amplitude.theta1", cfg.amplitude.theta1);
    num("amplitude.theta2", cfg.amplitude.theta2);
    const auto [family, kind] = family_words(cfg.solution.kind);
    os << "potential.family=" << family << "\n";
    if (!kind.empty()) os << "solution.kind=" << kind << "\n";
    num("solution.sigma", cfg.solution.sigma);
    num("solution.q1", cfg.solution.q1);
    num("solution.q2", cfg.solution.q2);
    num("solution.q3", cfg.solution.q3);
    num("solution.alpha", cfg.solution.alpha);
    num("solution.omega", cfg.solution.omega);
    num("solution.e", cfg.solution.e);
    num("solution.c", cfg.solution.c);
    os << "potential.n=" << cfg.solution.n << "\n";
    num("potential.v", cfg.solution.v);
    switch (cfg.susy.family) {
        case SusyChoice::Family::Polynomial: os << "susy.family=polynomial\n"; break;
        case SusyChoice::Family::Exponential: os << "susy.family=exponential\n"; break;
        case SusyChoice::Family::Box: os << "susy.family=box\n"; break;
        case SusyChoice::Family::RosenMorse: os << "susy.family=rosen_morse\n"; break;
    }
    num("susy.w0", cfg.susy.w0);
    num("susy.w1", cfg.susy.w1);
    num("susy.w2", cfg.susy.w2);
    num("susy.a", cfg.susy.a);
    num("susy.b", cfg.susy.b);
    num("susy.rate", cfg.susy.rate);
    num("susy.l", cfg.susy.l);
    num("susy.n", cfg.susy.n);
    num("modulation.split", cfg.mod_split);
    num("modulation.g.amplitude", cfg.g_amplitude);
    num("modulation.g.omega_t", cfg.g_omega_t);
    num("grid.x_min", cfg.x_min);
    num("grid.x_max", cfg.x_max);
    os << "grid.n_x=" << cfg.n_x << "\n";
    num("grid.t_min", cfg.t_min);
    num("grid.t_max", cfg.t_max);
    os << "grid.t_count=" << cfg.t_count << "\n";
    num("evolve.dt", cfg.evolve_dt);
    num("evolve.t_final", cfg.evolve_t_final);
    os << "evolve.record_stride=" << cfg.record_stride << "\n";
    os << "evolve.boundary="
       << (cfg.boundary == BoundaryKind::Periodic ? "periodic" : "absorbing") << "\n";
    num("evolve.mask_width", cfg.mask_width);
    os << "evolve.allow_blowup=" << (cfg.allow_blowup ? 1 : 0) << "\n";
    num("probe.amplitude", cfg.probe_amplitude);
    os << "verify.fields=" << (cfg.verify_fields ? 1 : 0) << "\n";
    num("sweep.gamma_min", cfg.sweep_gamma_min);
    num("sweep.gamma_max", cfg.sweep_gamma_max);
    os << "sweep.gamma_steps=" << cfg.sweep_gamma_steps << "\n";
    num("sweep.beta_min", cfg.sweep_beta_min);
    num("sweep.beta_max", cfg.sweep_beta_max);
    os << "sweep.beta_steps=" << cfg.sweep_beta_steps << "\n";
    num("sweep.t_final", cfg.sweep_t_final);
    os << "seed=" << cfg.seed << "\n";
    os << "out_dir=" << cfg.out_dir << "\n";
    return os.str();
}

Superpotential make_superpotential(const RunConfig& cfg) {
    switch (cfg.susy.family) {
        case SusyChoice::Family::Polynomial:
            return SuperPolynomial{cfg.susy.w0, cfg.susy.w1, cfg.susy.w2};
        case SusyChoice::Family::Exponential:
            return SuperExponential{cfg.susy.a, cfg.susy.b, cfg.susy.rate};
        case SusyChoice::Family::Box:
            return SuperBox{cfg.susy.l};
        case SusyChoice::Family::RosenMorse:
            return SuperRosenMorse{cfg.susy.n};
    }
    throw ConfigError("unreachable susy family");
}

ExactSolution make_solution(const RunConfig& cfg) {
    using K = SolutionChoice::Kind;
    const SolutionChoice& s = cfg.solution;
    switch (s.kind) {
        case K::FreeElliptic:
            return ExactSolution::free_space_elliptic(cfg.coupling, cfg.amplitude, s.alpha,
                                                      s.omega, s.sigma, s.q1, s.q2, s.q3);
        case K::Soliton:
            return ExactSolution::free_space_soliton(cfg.coupling, cfg.amplitude, s.e, s.sigma);
        case K::Ermakov:
            return ExactSolution::ermakov_pinney(cfg.coupling, cfg.amplitude, s.e, s.c);
        case K::Reflectionless:
            return ExactSolution::reflectionless(
                cfg.coupling, cfg.amplitude, s.n,
                EllipticTriple{s.q1, s.q2, s.q3, s.sigma, EllipticBranch::UpperBand});
        case K::Quadratic:
            return ExactSolution::quadratic(
                cfg.coupling, cfg.amplitude, s.e,
                EllipticTriple{s.q1, s.q2, s.q3, s.sigma, EllipticBranch::UpperBand});
        case K::Scarf2:
            return ExactSolution::scarf2(cfg.coupling, cfg.amplitude, s.v, s.sigma);
        case K::PeriodicComplex:
            return ExactSolution::periodic_complex(cfg.coupling, cfg.amplitude, s.sigma);
        case K::Susy: {
            GridSpec g = cfg.grid();
            g.t_samples.clear();
            return ExactSolution::susy_zero_mode(cfg.coupling, cfg.amplitude,
                                                 make_superpotential(cfg), g);
        }
    }
    throw ConfigError("unreachable solution kind");
}

SpaceField scale_field(const SpaceField& f, double factor) {
    return std::visit(
        [factor](auto v) -> SpaceField {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FieldTabulated>) {
                for (double& y : v.v) y *= factor;
                return v;
            } else {
                v.c *= factor;
                return v;
            }
        },
        f);
}

ModulationSpec make_modulation(const RunConfig& cfg, const ExactSolution& sol) {
    ModulationSpec spec;
    const SpaceField f = sol.f_field();
    const bool f_is_zero =
        std::holds_alternative<FieldConstant>(f) && std::get<FieldConstant>(f).c == 0.0;
    if (f_is_zero) {
        spec.f1 = FieldConstant{cfg.mod_split};
        spec.f2 = FieldConstant{-cfg.mod_split};
    } else {
        spec.f1 = scale_field(f, 1.0 + cfg.mod_split);
        spec.f2 = scale_field(f, 1.0 - cfg.mod_split);
    }
    spec.g.space = FieldConstant{cfg.g_amplitude};
    if (cfg.g_omega_t != 0.0) {
        spec.g.time = TimeCosine{cfg.g_omega_t};
    }
    return spec;
}

}  // namespace nlse
