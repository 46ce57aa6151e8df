#pragma once

// The similarity-transform solution factory. Every constructed solution has
// the form
//
//     Psi(x,t) = U(t) W rho(x) u(zeta(x)) e^{i(theta(x) - E t)},
//
// with zeta = int dx / rho^2 and u solving the constant-coefficient oscillator
//
//     u_zz + m u - C^2/u^3 - 2 sigma u^3 = 0,
//
// whose bounded branches are Jacobi-sn bands between roots of the cubic
// Q^3 - (m/sigma) Q^2 + (C1/sigma) Q - C^2/sigma (Q = u^2). Families:
//
//   free-space elliptic   rho^2 = 1 + alpha cos(omega x), E = omega^2/4,
//                         m = omega^2 (1-alpha^2)/4 (the root triple must
//                         satisfy sigma(Q1+Q2+Q3) = m; Q3 is derived)
//   free-space soliton    R0 = sqrt(|E|/|sigma|) sech(sqrt(|E|) x), C = 0
//   Ermakov-Pinney        R_P = sqrt(sin^2(sqrt(E) x) + (C^2/E) cos^2), sigma = 0
//   reflectionless        rho = cosh^N x, E = m = 0, zeta = int sech^{2N}
//   quadratic             rho = e^{-E x^2/2}, m = 0, zeta = (1/2)sqrt(pi/E) erfi(sqrt(E) x)
//   Scarf-II              R = sech(x)/sqrt(|sigma|), theta = (V/3) arctan(sinh x), E = m = -1
//   periodic complex      R = sec(x)/sqrt(sigma) on (-pi/2, pi/2), theta = sin x, E = m = 1
//   SUSY zero mode        R0 = N0 e^{-theta}, theta = int h, E = 0, f = 0

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nlse/amplitude.hpp"
#include "nlse/fields.hpp"
#include "nlse/grid.hpp"
#include "nlse/lossgain.hpp"
#include "nlse/matrix2.hpp"
#include "nlse/susy.hpp"

namespace nlse {

// ---- potentials -------------------------------------------------------------

struct FreeSpacePotential {};
struct ReflectionlessPotential {
    int n = 1;  // V = N^2 - N(N-1) sech^2 x
};
struct QuadraticPotential {
    double e = 1.0;  // V = E^2 x^2, E > 0
};
struct ScarfIIPotential {
    double v = 3.0;  // V = -(V^2/9) sech^2 x - i V sech x tanh x
};
struct PeriodicComplexPotential {};  // V = -cos^2 x + i sin x
struct SuperpotentialPotential {
    Superpotential h;
};

using PotentialSpec =
    std::variant<FreeSpacePotential, ReflectionlessPotential, QuadraticPotential,
                 ScarfIIPotential, PeriodicComplexPotential, SuperpotentialPotential>;

cplx potential_value(const PotentialSpec& pot, double x);

// ---- elliptic root triples (Appendix-style cubic reduction) -----------------

// Q-band the solution occupies: between the two lower roots (sigma > 0,
// bounded), above the top root (sigma > 0, singular), or between the two
// upper roots (sigma < 0, bounded).
enum class EllipticBranch { LowerBand, Singular, UpperBand };

struct EllipticTriple {
    double q1, q2, q3;
    double sigma;
    EllipticBranch branch = EllipticBranch::LowerBand;

    void validate() const;  // throws InconsistentRootsError
    double lambda() const { return std::sqrt(q3 - q1); }
    double modulus_sq() const {
        return branch == EllipticBranch::UpperBand ? (q3 - q2) / (q3 - q1)
                                                   : (q2 - q1) / (q3 - q1);
    }
};

struct CubicConstants {
    double c;     // +sqrt(sigma Q1 Q2 Q3)
    double c_sq;  // sigma Q1 Q2 Q3
    double c1;    // sigma (Q1 Q2 + Q2 Q3 + Q1 Q3)
    double m;     // sigma (Q1 + Q2 + Q3)
};

// Vieta reconstruction of the oscillator constants from the roots.
CubicConstants cubic_from_roots(const EllipticTriple& triple);

// u(zeta) = sqrt(Q) with Q on the branch band, evaluated at y = sqrt(|sigma|) zeta.
// The singular branch evaluates (diverges at y = 0) but is rejected by every
// solution factory.
double u_of_zeta(const EllipticTriple& triple, double zeta);

// ---- similarity maps (rho, zeta, f, m) per real-potential family ------------

struct SimilarityMap {
    std::function<double(double)> rho;
    std::function<double(double)> zeta;  // continuous, strictly increasing
    SpaceField f_field;                  // f(x) = 2 sigma / rho^6
    double m;
    double e;
};

SimilarityMap rho_zeta_f_free_space(double alpha, double omega, double sigma);
SimilarityMap rho_zeta_f_reflectionless(int n, double sigma);
SimilarityMap rho_zeta_f_quadratic(double e, double sigma);

// theta(x) = int_0^x C / R^2 for real potentials, cumulatively on sorted xs.
// Throws ZeroCrossingError if R vanishes on the grid while C != 0.
std::vector<double> theta_real_potential(const std::function<double(double)>& r_of_x, double c,
                                         std::span<const double> xs);

// ---- the assembled solution --------------------------------------------------

class ExactSolution {
public:
    struct Profile {
        std::vector<double> r;
        std::vector<double> theta;
    };

    const CouplingConfig& coupling() const { return cfg_; }
    const AmplitudeVector& amplitude() const { return amp_; }
    const PotentialSpec& potential() const { return potential_; }
    double energy() const { return e_; }
    double similarity_m() const { return m_; }
    double sigma() const { return sigma_; }
    double phase_constant() const { return c_; }
    const std::vector<std::string>& notes() const { return notes_; }

    double rho(double x) const;
    double zeta(double x) const;
    double amplitude_r(double x) const;  // R(x) = rho u(zeta)
    double theta(double x) const;        // closed form or one-shot quadrature
    double spatial_f(double x) const;    // f(x) entering the amplitude equation
    SpaceField f_field() const;          // tagged form of f(x)

    // R and theta sampled on sorted abscissae (theta via cumulative quadrature
    // where no closed form exists; anchored theta(0) = 0).
    Profile profile(std::span<const double> xs) const;

    // Psi(x,t) from a profile entry: U(t) W r e^{i(theta - E t)}.
    Vec2c psi_from(double r, double theta, double t) const;
    Vec2c psi_at(double x, double t) const;

    // --- factories ---
    // Free space, sn band between the lower roots. q3 is derived from the
    // consistency constraint sigma (q1+q2+q3) = omega^2 (1-alpha^2)/4; a
    // request that disagrees is honored with a provenance note.
    static ExactSolution free_space_elliptic(const CouplingConfig& cfg, const AmplitudeVector& w,
                                             double alpha, double omega, double sigma, double q1,
                                             double q2, double q3_requested);
    static ExactSolution free_space_soliton(const CouplingConfig& cfg, const AmplitudeVector& w,
                                            double e, double sigma);  // e < 0, sigma < 0
    static ExactSolution ermakov_pinney(const CouplingConfig& cfg, const AmplitudeVector& w,
                                        double e, double c);  // e > 0, sigma = 0
    static ExactSolution reflectionless(const CouplingConfig& cfg, const AmplitudeVector& w,
                                        int n, const EllipticTriple& triple);
    static ExactSolution quadratic(const CouplingConfig& cfg, const AmplitudeVector& w, double e,
                                   const EllipticTriple& triple);
    static ExactSolution scarf2(const CouplingConfig& cfg, const AmplitudeVector& w, double v,
                                double sigma);  // sigma < 0
    static ExactSolution periodic_complex(const CouplingConfig& cfg, const AmplitudeVector& w,
                                          double sigma);  // sigma > 0, clamped domain
    static ExactSolution susy_zero_mode(const CouplingConfig& cfg, const AmplitudeVector& w,
                                        const Superpotential& h, const GridSpec& norm_grid);

    // Working-domain clamp of the periodic complex family.
    static constexpr double kPeriodicDomainMargin = 1e-2;

private:
    struct FreeElliptic {
        double alpha, omega;
        EllipticTriple triple;
        double pref, q;  // zeta = pref (atan(q tan(omega x/2)) + k pi)
    };
    struct Reflectionless {
        int n;
        EllipticTriple triple;
    };
    struct Quadratic {
        double e;
        EllipticTriple triple;
    };
    struct Soliton {
        double e_abs, sigma_abs;
    };
    struct Ermakov {
        double e, c;
    };
    struct Scarf {
        double v, sigma_abs;
    };
    struct PeriodicSec {
        double sigma;
    };
    struct SusyMode {
        Superpotential h;
        double n0;
    };
    using Family = std::variant<FreeElliptic, Reflectionless, Quadratic, Soliton, Ermakov, Scarf,
                                PeriodicSec, SusyMode>;

    ExactSolution(CouplingConfig cfg, AmplitudeVector amp, PotentialSpec pot, Family fam,
                  double e, double m, double sigma, double c);

    bool theta_is_closed() const;
    double theta_closed(double x) const;

    CouplingConfig cfg_;
    AmplitudeVector amp_;
    PotentialSpec potential_;
    Family family_;
    double e_ = 0.0, m_ = 0.0, sigma_ = 0.0, c_ = 0.0;
    std::vector<std::string> notes_;
};

}  // namespace nlse
