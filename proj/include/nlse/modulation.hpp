#pragma once

// The transformed-frame algebra: T_pm, the hermitian quadratic forms
// F_pm = U^dag P_pm U, the coupling matrix K(xi1, xi2) = xi1 U^-1 P_+ U +
// xi2 U^-1 P_- U, the scalars W^dag F_pm W, the constant D, and the four
// space-time nonlinearity profiles g_ij built from the free functions
// (f1, f2, G) in the symmetric form
//
//   g11 = (f1 + G)/(2 W^dag F_+ W),  g21 = (f1 - G)/(2 W^dag F_+ W),
//   g22 = (f2 + G)/(2 W^dag F_- W),  g12 = (f2 - G)/(2 W^dag F_- W).
//
// With any such choice, K(g11,g21) W^dag F_+ W + K(g12,g22) W^dag F_- W
// collapses to f(x) sigma0 with f = (f1+f2)/2, which is why the constructed
// solutions depend only on f.

#include <utility>

#include "nlse/amplitude.hpp"
#include "nlse/fields.hpp"
#include "nlse/lossgain.hpp"
#include "nlse/matrix2.hpp"

namespace nlse {

struct ModulationSpec {
    SpaceField f1 = FieldConstant{0.0};
    SpaceField f2 = FieldConstant{0.0};
    SpaceTimeField g;  // G(x,t)

    double f(double x) const { return 0.5 * (eval(f1, x) + eval(f2, x)); }

    // f1 = f2 = f, G = 0.
    static ModulationSpec symmetric(SpaceField f_field) {
        return {f_field, std::move(f_field), {}};
    }
};

// T_pm = (Gamma mu / eps^2) sin^2(eps) +- sin(2 eps)/(2 eps); real in every
// regime, with the eps -> 0 limits taken by series.
std::pair<double, double> t_pm(const CouplingConfig& cfg, double t);

struct FkTriple {
    Mat2 f_plus;
    Mat2 f_minus;
    Mat2 k;
};

// Closed forms of F_pm and K(xi1, xi2); equals the U^dag P_pm U / U^-1 P_pm U
// products entrywise.
FkTriple f_pm_and_k(const CouplingConfig& cfg, double t, double xi1, double xi2);

// W^dag F_pm W = b0 (1/2 + T_pm mu D) + b3 [(Gamma mu / 2 eps) sin 2eps +- (1/2) cos 2eps].
std::pair<double, double> w_f_w(const CouplingConfig& cfg, const AmplitudeVector& w, double t);

// D = Gamma + (2/b0) W1 W2 |beta| sin(theta2 - theta1 - theta3).
double d_constant(const CouplingConfig& cfg, const AmplitudeVector& w);

struct NonlinearCoeffs {
    double g11, g12, g21, g22;
};

// Symmetric-form g_ij at (x, t). Throws DegenerateWeightError when
// |W^dag F_pm W| < 1e-14.
NonlinearCoeffs build_gij(const CouplingConfig& cfg, const AmplitudeVector& w,
                          const ModulationSpec& spec, double x, double t);

// The fully general parameterization with g22 kept free (the undetermined
// system solved for the remaining three); used to test the equivalence of the
// two parameterizations.
NonlinearCoeffs build_gij_general(const CouplingConfig& cfg, const AmplitudeVector& w,
                                  const SpaceField& f1, const SpaceField& f2, double g22,
                                  double x, double t);

}  // namespace nlse
