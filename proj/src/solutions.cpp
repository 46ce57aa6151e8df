#include "nlse/solutions.hpp"

#include <cmath>

#include "nlse/errors.hpp"
#include "nlse/quadrature.hpp"
#include "nlse/specfun.hpp"

namespace nlse {

cplx potential_value(const PotentialSpec& pot, double x) {
    return std::visit(
        [x](const auto& p) -> cplx {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FreeSpacePotential>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, ReflectionlessPotential>) {
                const double n = p.n;
                const double s = 1.0 / std::cosh(x);
                return n * n - n * (n - 1.0) * s * s;
            } else if constexpr (std::is_same_v<T, QuadraticPotential>) {
                return p.e * p.e * x * x;
            } else if constexpr (std::is_same_v<T, ScarfIIPotential>) {
                const double s = 1.0 / std::cosh(x);
                return {-(p.v * p.v / 9.0) * s * s, -p.v * s * std::tanh(x)};
            } else if constexpr (std::is_same_v<T, PeriodicComplexPotential>) {
                const double c = std::cos(x);
                return {-c * c, std::sin(x)};
            } else {
                return complex_potential(p.h, x);
            }
        },
        pot);
}

void EllipticTriple::validate() const {
    const bool finite = std::isfinite(q1) && std::isfinite(q2) && std::isfinite(q3) &&
                        std::isfinite(sigma);
    if (!finite) throw InconsistentRootsError("elliptic roots must be finite");
    switch (branch) {
        case EllipticBranch::LowerBand:
            if (!(sigma > 0.0 && 0.0 < q1 && q1 <= q2 && q2 < q3)) {
                throw InconsistentRootsError(
                    "lower-band branch needs sigma > 0 and 0 < Q1 <= Q2 < Q3");
            }
            break;
        case EllipticBranch::Singular:
            if (!(sigma > 0.0 && 0.0 < q1 && q1 < q2 && q2 < q3)) {
                throw InconsistentRootsError(
                    "singular branch needs sigma > 0 and 0 < Q1 < Q2 < Q3");
            }
            break;
        case EllipticBranch::UpperBand:
            if (!(sigma < 0.0 && q1 < 0.0 && 0.0 < q2 && q2 <= q3)) {
                throw InconsistentRootsError(
                    "upper-band branch needs sigma < 0 and Q1 < 0 < Q2 <= Q3");
            }
            break;
    }
    if (sigma * q1 * q2 * q3 < -1e-15) {
        throw InconsistentRootsError("sigma Q1 Q2 Q3 < 0 leaves no real phase constant C");
    }
}

CubicConstants cubic_from_roots(const EllipticTriple& t) {
    t.validate();
    const double c_sq = t.sigma * t.q1 * t.q2 * t.q3;
    if (c_sq < -1e-15) {
        throw InconsistentRootsError("sigma Q1 Q2 Q3 < 0 leaves no real phase constant C");
    }
    return {std::sqrt(std::max(0.0, c_sq)), c_sq,
            t.sigma * (t.q1 * t.q2 + t.q2 * t.q3 + t.q1 * t.q3),
            t.sigma * (t.q1 + t.q2 + t.q3)};
}

double u_of_zeta(const EllipticTriple& t, double zeta) {
    t.validate();
    const double y = std::sqrt(std::abs(t.sigma)) * zeta;
    const auto j = jacobi_elliptic(t.lambda() * y, EllipticModulus(t.modulus_sq()));
    const double sn2 = j.sn * j.sn;
    double q;
    switch (t.branch) {
        case EllipticBranch::LowerBand:
            q = t.q1 + (t.q2 - t.q1) * sn2;
            break;
        case EllipticBranch::Singular:
            q = t.q1 + (t.q3 - t.q1) / sn2;  // diverges at y = 0
            break;
        case EllipticBranch::UpperBand:
            q = t.q3 - (t.q3 - t.q2) * sn2;
            break;
        default:
            q = 0.0;
    }
    return std::sqrt(q);
}

// ---- similarity maps ---------------------------------------------------------

SimilarityMap rho_zeta_f_free_space(double alpha, double omega, double sigma) {
    if (!(std::abs(alpha) < 1.0)) throw std::invalid_argument("free space needs |alpha| < 1");
    if (!(omega > 0.0)) throw std::invalid_argument("free space needs omega > 0");
    const double root = std::sqrt(1.0 - alpha * alpha);
    const double pref = 2.0 / (omega * root);
    const double q = std::sqrt((1.0 - alpha) / (1.0 + alpha));
    SimilarityMap map;
    map.e = omega * omega / 4.0;
    map.m = omega * omega * (1.0 - alpha * alpha) / 4.0;
    map.rho = [alpha, omega](double x) { return std::sqrt(1.0 + alpha * std::cos(omega * x)); };
    // arctan(q tan(omega x/2)) continued across the tan poles: split
    // omega x/2 = k pi + phi with phi in [-pi/2, pi/2], add back k pi.
    map.zeta = [pref, q, omega](double x) {
        const double s = 0.5 * omega * x;
        const double k = std::round(s / M_PI);
        const double phi = s - k * M_PI;
        return pref * (std::atan(q * std::tan(phi)) + k * M_PI);
    };
    map.f_field = FieldCosinePower{2.0 * sigma, alpha, omega, 3.0};
    return map;
}

SimilarityMap rho_zeta_f_reflectionless(int n, double sigma) {
    if (n < 1) throw std::invalid_argument("reflectionless potential needs N >= 1");
    SimilarityMap map;
    map.e = 0.0;
    map.m = 0.0;
    map.rho = [n](double x) { return std::pow(std::cosh(x), n); };
    // zeta = int_0^x sech^{2N}, via int sech^k = sech^{k-2} tanh/(k-1)
    //                                            + (k-2)/(k-1) int sech^{k-2}.
    map.zeta = [n](double x) {
        const double th = std::tanh(x);
        const double sech = 1.0 / std::cosh(x);
        double acc = th;  // k = 2
        for (int k = 4; k <= 2 * n; k += 2) {
            acc = std::pow(sech, k - 2) * th / (k - 1) + static_cast<double>(k - 2) / (k - 1) * acc;
        }
        return acc;
    };
    map.f_field = FieldSechPower{2.0 * sigma, 6.0 * n};
    return map;
}

SimilarityMap rho_zeta_f_quadratic(double e, double sigma) {
    if (!(e > 0.0)) throw std::invalid_argument("quadratic potential needs E > 0");
    SimilarityMap map;
    map.e = e;
    map.m = 0.0;
    map.rho = [e](double x) { return std::exp(-0.5 * e * x * x); };
    map.zeta = [e](double x) {
        return 0.5 * std::sqrt(M_PI / e) * erf_family(std::sqrt(e) * x).erfi;
    };
    map.f_field = FieldGaussianGrowth{2.0 * sigma, e};
    return map;
}

std::vector<double> theta_real_potential(const std::function<double(double)>& r_of_x, double c,
                                         std::span<const double> xs) {
    std::vector<double> theta(xs.size(), 0.0);
    if (c == 0.0) return theta;
    for (const double x : xs) {
        if (std::abs(r_of_x(x)) < 1e-7) {
            throw ZeroCrossingError("R vanishes on the grid; theta = int C/R^2 diverges");
        }
    }
    return cumulative_integral(
        [&r_of_x, c](double x) {
            const double r = r_of_x(x);
            return c / (r * r);
        },
        xs, 0.0, 1e-12);
}

// ---- ExactSolution -----------------------------------------------------------

ExactSolution::ExactSolution(CouplingConfig cfg, AmplitudeVector amp, PotentialSpec pot,
                             Family fam, double e, double m, double sigma, double c)
    : cfg_(std::move(cfg)),
      amp_(amp),
      potential_(std::move(pot)),
      family_(std::move(fam)),
      e_(e),
      m_(m),
      sigma_(sigma),
      c_(c) {
    cfg_.validate();
    amp_.validate();
}

double ExactSolution::rho(double x) const {
    return std::visit(
        [x](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, FreeElliptic>) {
                return std::sqrt(1.0 + f.alpha * std::cos(f.omega * x));
            } else if constexpr (std::is_same_v<T, Reflectionless>) {
                return std::pow(std::cosh(x), f.n);
            } else if constexpr (std::is_same_v<T, Quadratic>) {
                return std::exp(-0.5 * f.e * x * x);
            } else {
                (void)f;
                return 1.0;
            }
        },
        family_);
}

double ExactSolution::zeta(double x) const {
    return std::visit(
        [x](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, FreeElliptic>) {
                const double s = 0.5 * f.omega * x;
                const double k = std::round(s / M_PI);
                const double phi = s - k * M_PI;
                return f.pref * (std::atan(f.q * std::tan(phi)) + k * M_PI);
            } else if constexpr (std::is_same_v<T, Reflectionless>) {
                const double th = std::tanh(x);
                const double sech = 1.0 / std::cosh(x);
                double acc = th;
                for (int k = 4; k <= 2 * f.n; k += 2) {
                    acc = std::pow(sech, k - 2) * th / (k - 1) +
                          static_cast<double>(k - 2) / (k - 1) * acc;
                }
                return acc;
            } else if constexpr (std::is_same_v<T, Quadratic>) {
                return 0.5 * std::sqrt(M_PI / f.e) * erf_family(std::sqrt(f.e) * x).erfi;
            } else {
                (void)f;
                return x;
            }
        },
        family_);
}

double ExactSolution::amplitude_r(double x) const {
    return std::visit(
        [x, this](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, FreeElliptic> || std::is_same_v<T, Reflectionless> ||
                          std::is_same_v<T, Quadratic>) {
                return rho(x) * u_of_zeta(f.triple, zeta(x));
            } else if constexpr (std::is_same_v<T, Soliton>) {
                const double k = std::sqrt(f.e_abs);
                return std::sqrt(f.e_abs / f.sigma_abs) / std::cosh(k * x);
            } else if constexpr (std::is_same_v<T, Ermakov>) {
                const double se = std::sqrt(f.e);
                const double s = std::sin(se * x);
                const double co = std::cos(se * x);
                return std::sqrt(s * s + f.c * f.c / f.e * co * co);
            } else if constexpr (std::is_same_v<T, Scarf>) {
                return 1.0 / (std::sqrt(f.sigma_abs) * std::cosh(x));
            } else if constexpr (std::is_same_v<T, PeriodicSec>) {
                const double xc =
                    std::clamp(x, -M_PI_2 + kPeriodicDomainMargin, M_PI_2 - kPeriodicDomainMargin);
                return 1.0 / (std::sqrt(f.sigma) * std::cos(xc));
            } else {
                return f.n0 * std::exp(-theta_integral(f.h, x));
            }
        },
        family_);
}

double ExactSolution::spatial_f(double x) const { return eval(f_field(), x); }

SpaceField ExactSolution::f_field() const {
    return std::visit(
        [this](const auto& f) -> SpaceField {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, FreeElliptic>) {
                return FieldCosinePower{2.0 * sigma_, f.alpha, f.omega, 3.0};
            } else if constexpr (std::is_same_v<T, Reflectionless>) {
                return FieldSechPower{2.0 * sigma_, 6.0 * f.n};
            } else if constexpr (std::is_same_v<T, Quadratic>) {
                return FieldGaussianGrowth{2.0 * sigma_, f.e};
            } else if constexpr (std::is_same_v<T, Ermakov> || std::is_same_v<T, SusyMode>) {
                return FieldConstant{0.0};
            } else {
                return FieldConstant{2.0 * sigma_};
            }
        },
        family_);
}

bool ExactSolution::theta_is_closed() const {
    return std::holds_alternative<Scarf>(family_) ||
           std::holds_alternative<PeriodicSec>(family_) ||
           std::holds_alternative<SusyMode>(family_) || c_ == 0.0;
}

double ExactSolution::theta_closed(double x) const {
    if (const auto* s = std::get_if<Scarf>(&family_)) {
        return s->v / 3.0 * std::atan(std::sinh(x));
    }
    if (std::holds_alternative<PeriodicSec>(family_)) {
        const double xc =
            std::clamp(x, -M_PI_2 + kPeriodicDomainMargin, M_PI_2 - kPeriodicDomainMargin);
        return std::sin(xc);
    }
    if (const auto* s = std::get_if<SusyMode>(&family_)) {
        return theta_integral(s->h, x);
    }
    return 0.0;  // C = 0: spatially constant phase
}

double ExactSolution::theta(double x) const {
    if (theta_is_closed()) return theta_closed(x);
    return integrate_adaptive(
        [this](double s) {
            const double r = amplitude_r(s);
            return c_ / (r * r);
        },
        0.0, x, 1e-12);
}

ExactSolution::Profile ExactSolution::profile(std::span<const double> xs) const {
    Profile p;
    p.r.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) p.r[i] = amplitude_r(xs[i]);
    if (theta_is_closed()) {
        p.theta.resize(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) p.theta[i] = theta_closed(xs[i]);
    } else {
        p.theta = theta_real_potential([this](double x) { return amplitude_r(x); }, c_, xs);
    }
    return p;
}

Vec2c ExactSolution::psi_from(double r, double th, double t) const {
    const Mat2 u = u_matrix(cfg_, t);
    const cplx ph = std::polar(r, th - e_ * t);
    return u * (amp_.w() * ph);
}

Vec2c ExactSolution::psi_at(double x, double t) const {
    return psi_from(amplitude_r(x), theta(x), t);
}

// ---- factories ---------------------------------------------------------------

ExactSolution ExactSolution::free_space_elliptic(const CouplingConfig& cfg,
                                                 const AmplitudeVector& w, double alpha,
                                                 double omega, double sigma, double q1, double q2,
                                                 double q3_requested) {
    if (!(sigma > 0.0)) throw InconsistentRootsError("free-space elliptic family needs sigma > 0");
    const SimilarityMap map = rho_zeta_f_free_space(alpha, omega, sigma);
    const double q3 = map.m / sigma - q1 - q2;
    EllipticTriple triple{q1, q2, q3, sigma, EllipticBranch::LowerBand};
    triple.validate();
    const CubicConstants cc = cubic_from_roots(triple);
    FreeElliptic fam{alpha, omega, triple, 2.0 / (omega * std::sqrt(1.0 - alpha * alpha)),
                     std::sqrt((1.0 - alpha) / (1.0 + alpha))};
    ExactSolution sol(cfg, w, FreeSpacePotential{}, fam, map.e, map.m, sigma, cc.c);
    if (std::abs(q3 - q3_requested) > 1e-12) {
        sol.notes_.push_back("q3 adjusted from " + std::to_string(q3_requested) + " to " +
                             std::to_string(q3) +
                             " to satisfy sigma(Q1+Q2+Q3) = omega^2(1-alpha^2)/4");
    }
    return sol;
}

ExactSolution ExactSolution::free_space_soliton(const CouplingConfig& cfg,
                                                const AmplitudeVector& w, double e,
                                                double sigma) {
    if (!(e < 0.0 && sigma < 0.0)) {
        throw std::invalid_argument("soliton family needs E < 0 and sigma < 0");
    }
    Soliton fam{-e, -sigma};
    return ExactSolution(cfg, w, FreeSpacePotential{}, fam, e, e, sigma, 0.0);
}

ExactSolution ExactSolution::ermakov_pinney(const CouplingConfig& cfg, const AmplitudeVector& w,
                                            double e, double c) {
    if (!(e > 0.0)) throw std::invalid_argument("Ermakov-Pinney solution diverges for E <= 0");
    Ermakov fam{e, c};
    // sigma = 0: the phase integral has closed oscillatory R, but theta still
    // needs quadrature, so c_ is stored and the generic path applies.
    return ExactSolution(cfg, w, FreeSpacePotential{}, fam, e, e, 0.0, c);
}

ExactSolution ExactSolution::reflectionless(const CouplingConfig& cfg, const AmplitudeVector& w,
                                            int n, const EllipticTriple& triple) {
    triple.validate();
    if (triple.branch == EllipticBranch::Singular) {
        throw SingularFamilyError("singular elliptic branch cannot be assembled");
    }
    const CubicConstants cc = cubic_from_roots(triple);
    if (std::abs(cc.m) > 1e-12) {
        throw InconsistentRootsError("reflectionless family needs sigma(Q1+Q2+Q3) = 0");
    }
    Reflectionless fam{n, triple};
    return ExactSolution(cfg, w, ReflectionlessPotential{n}, fam, 0.0, 0.0, triple.sigma, cc.c);
}

ExactSolution ExactSolution::quadratic(const CouplingConfig& cfg, const AmplitudeVector& w,
                                       double e, const EllipticTriple& triple) {
    if (!(e > 0.0)) throw std::invalid_argument("quadratic family diverges for E <= 0");
    triple.validate();
    if (triple.branch == EllipticBranch::Singular) {
        throw SingularFamilyError("singular elliptic branch cannot be assembled");
    }
    const CubicConstants cc = cubic_from_roots(triple);
    if (std::abs(cc.m) > 1e-12) {
        throw InconsistentRootsError("quadratic family needs sigma(Q1+Q2+Q3) = 0");
    }
    Quadratic fam{e, triple};
    return ExactSolution(cfg, w, QuadraticPotential{e}, fam, e, 0.0, triple.sigma, cc.c);
}

ExactSolution ExactSolution::scarf2(const CouplingConfig& cfg, const AmplitudeVector& w, double v,
                                    double sigma) {
    if (!(sigma < 0.0)) throw std::invalid_argument("Scarf-II family needs sigma < 0");
    Scarf fam{v, -sigma};
    return ExactSolution(cfg, w, ScarfIIPotential{v}, fam, -1.0, -1.0, sigma, 0.0);
}

ExactSolution ExactSolution::periodic_complex(const CouplingConfig& cfg,
                                              const AmplitudeVector& w, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("periodic complex family needs sigma > 0");
    PeriodicSec fam{sigma};
    return ExactSolution(cfg, w, PeriodicComplexPotential{}, fam, 1.0, 1.0, sigma, 0.0);
}

ExactSolution ExactSolution::susy_zero_mode(const CouplingConfig& cfg, const AmplitudeVector& w,
                                            const Superpotential& h, const GridSpec& norm_grid) {
    const ZeroMode zm = zero_mode(h, norm_grid);  // throws if not normalizable
    SusyMode fam{h, zm.n0};
    return ExactSolution(cfg, w, SuperpotentialPotential{h}, fam, 0.0, 0.0, 0.0, 0.0);
}

}  // namespace nlse
