#include "nlse/modulation.hpp"

#include <cmath>

#include "nlse/errors.hpp"

namespace nlse {

double eval(const SpaceField& f, double x) {
    return std::visit(
        [x](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FieldConstant>) {
                return v.c;
            } else if constexpr (std::is_same_v<T, FieldSechPower>) {
                return v.c * std::pow(1.0 / std::cosh(x), v.p);
            } else if constexpr (std::is_same_v<T, FieldCosinePower>) {
                return v.c / std::pow(1.0 + v.alpha * std::cos(v.omega * x), v.p);
            } else if constexpr (std::is_same_v<T, FieldGaussianGrowth>) {
                return v.c * std::exp(3.0 * v.e * x * x);
            } else {
                if (v.x.size() < 2 || v.x.size() != v.v.size()) {
                    throw std::invalid_argument("tabulated field needs matching x/v samples");
                }
                if (x < v.x.front() || x > v.x.back()) {
                    throw TableRangeError("x outside tabulated field range");
                }
                const auto it = std::upper_bound(v.x.begin(), v.x.end(), x);
                const std::size_t i =
                    std::min<std::size_t>(v.x.size() - 1,
                                          std::max<std::ptrdiff_t>(1, it - v.x.begin())) - 1;
                const double w = (x - v.x[i]) / (v.x[i + 1] - v.x[i]);
                return v.v[i] * (1.0 - w) + v.v[i + 1] * w;
            }
        },
        f);
}

double eval(const TimeFactor& f, double t) {
    return std::visit(
        [t](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TimeConstant>) {
                return v.c;
            } else {
                return std::cos(v.omega * t);
            }
        },
        f);
}

std::pair<double, double> t_pm(const CouplingConfig& cfg, double t) {
    const double mu = mu_epsilon(cfg, t).first;
    const double z = mu * mu * cfg.eps0_sq();
    const double s1 = detail::sinc1(z);
    // sin^2(eps)/eps^2 = sinc1(z)^2, sin(2 eps)/(2 eps) = sinc1(4z)
    const double even = cfg.gamma * mu * s1 * s1;
    const double odd = detail::sinc1(4.0 * z);
    return {even + odd, even - odd};
}

FkTriple f_pm_and_k(const CouplingConfig& cfg, double t, double xi1, double xi2) {
    const double mu = mu_epsilon(cfg, t).first;
    const double z = mu * mu * cfg.eps0_sq();
    const auto [tp, tm] = t_pm(cfg, t);
    const double gm = cfg.gamma * mu;
    const cplx b = cfg.beta();
    const double s1 = detail::sinc1(z);
    const double sd = detail::sinc1(4.0 * z);  // sin(2 eps)/(2 eps)
    const double cd = detail::cos1(4.0 * z);   // cos(2 eps)

    // off = beta* sigma_+ - beta sigma_-
    auto f_of = [&](double tpm, double sgn) {
        Mat2 m = Mat2::identity() * (0.5 + gm * tpm);
        const cplx coef(0.0, -tpm * mu);
        m.m01 += coef * std::conj(b);
        m.m10 -= coef * b;
        const double d3 = gm * sd + sgn * 0.5 * cd;
        m.m00 += d3;
        m.m11 -= d3;
        return m;
    };

    FkTriple out;
    out.f_plus = f_of(tp, 1.0);
    out.f_minus = f_of(tm, -1.0);

    Mat2 k = Mat2::identity() * (0.5 * (xi1 + xi2));
    const cplx kc(0.0, (xi1 - xi2) * mu);
    k.m01 += kc * std::conj(b) * tm;
    k.m10 += kc * b * tp;
    const double k3 = (xi1 - xi2) * (0.5 - mu * mu * cfg.beta_abs * cfg.beta_abs * s1 * s1);
    k.m00 += k3;
    k.m11 -= k3;
    out.k = k;
    return out;
}

double d_constant(const CouplingConfig& cfg, const AmplitudeVector& amp) {
    return cfg.gamma + 2.0 / amp.b0() * amp.w1 * amp.w2 * cfg.beta_abs *
                           std::sin(amp.theta2 - amp.theta1 - cfg.theta3);
}

std::pair<double, double> w_f_w(const CouplingConfig& cfg, const AmplitudeVector& amp, double t) {
    const double mu = mu_epsilon(cfg, t).first;
    const double z = mu * mu * cfg.eps0_sq();
    const auto [tp, tm] = t_pm(cfg, t);
    const double d = d_constant(cfg, amp);
    const double b0 = amp.b0();
    const double b3 = amp.b3();
    const double sig3 = cfg.gamma * mu * detail::sinc1(4.0 * z);
    const double half_cd = 0.5 * detail::cos1(4.0 * z);
    return {b0 * (0.5 + tp * mu * d) + b3 * (sig3 + half_cd),
            b0 * (0.5 + tm * mu * d) + b3 * (sig3 - half_cd)};
}

namespace {
constexpr double kWeightFloor = 1e-14;

void check_weights(double wfp, double wfm) {
    if (std::abs(wfp) < kWeightFloor || std::abs(wfm) < kWeightFloor) {
        throw DegenerateWeightError("W^dag F_pm W vanished; g_ij undefined at this t");
    }
}
}  // namespace

NonlinearCoeffs build_gij(const CouplingConfig& cfg, const AmplitudeVector& amp,
                          const ModulationSpec& spec, double x, double t) {
    const auto [wfp, wfm] = w_f_w(cfg, amp, t);
    check_weights(wfp, wfm);
    const double f1 = eval(spec.f1, x);
    const double f2 = eval(spec.f2, x);
    const double g = eval(spec.g, x, t);
    return {(f1 + g) / (2.0 * wfp), (f2 - g) / (2.0 * wfm), (f1 - g) / (2.0 * wfp),
            (f2 + g) / (2.0 * wfm)};
}

NonlinearCoeffs build_gij_general(const CouplingConfig& cfg, const AmplitudeVector& amp,
                                  const SpaceField& f1f, const SpaceField& f2f, double g22,
                                  double x, double t) {
    const auto [wfp, wfm] = w_f_w(cfg, amp, t);
    check_weights(wfp, wfm);
    const double f1 = eval(f1f, x);
    const double f2 = eval(f2f, x);
    const double f = 0.5 * (f1 + f2);
    return {(f1 - f + g22 * wfm) / wfp, (f2 - g22 * wfm) / wfm, (f - g22 * wfm) / wfp, g22};
}

}  // namespace nlse
