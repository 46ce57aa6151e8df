#pragma once

// Tagged closed-form field expressions for the free functions f1(x), f2(x)
// and G(x,t) that tailor the nonlinearity profiles. Deliberately not a
// general expression parser; these cover every family the solutions use.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "nlse/errors.hpp"

namespace nlse {

struct FieldConstant {
    double c = 0.0;
};
struct FieldSechPower {
    double c = 1.0;
    double p = 1.0;  // c * sech^p(x)
};
struct FieldCosinePower {
    double c = 1.0;
    double alpha = 0.0;
    double omega = 1.0;
    double p = 1.0;  // c / (1 + alpha cos(omega x))^p
};
struct FieldGaussianGrowth {
    double c = 1.0;
    double e = 1.0;  // c * exp(3 e x^2)
};
struct FieldTabulated {
    std::vector<double> x;
    std::vector<double> v;  // linear interpolation, range-checked
};

using SpaceField =
    std::variant<FieldConstant, FieldSechPower, FieldCosinePower, FieldGaussianGrowth,
                 FieldTabulated>;

double eval(const SpaceField& f, double x);

struct TimeConstant {
    double c = 1.0;
};
struct TimeCosine {
    double omega = 1.0;  // cos(omega t)
};
using TimeFactor = std::variant<TimeConstant, TimeCosine>;

double eval(const TimeFactor& f, double t);

// Separable G(x,t) = space(x) * time(t); the constructed solutions are
// independent of this choice, it only reshapes the g_ij.
struct SpaceTimeField {
    SpaceField space = FieldConstant{0.0};
    TimeFactor time = TimeConstant{1.0};
};

inline double eval(const SpaceTimeField& f, double x, double t) {
    return eval(f.space, x) * eval(f.time, t);
}

}  // namespace nlse
