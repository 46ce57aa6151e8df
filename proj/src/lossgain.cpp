#include "nlse/lossgain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlse/errors.hpp"
#include "nlse/specfun.hpp"

namespace nlse {

namespace {
constexpr double kRegimeTol = 1e-12;
}

void CouplingConfig::validate() const {
    if (!(beta_abs >= 0.0)) throw std::invalid_argument("|beta| must be >= 0");
    if (!std::isfinite(gamma) || !std::isfinite(beta_abs) || !std::isfinite(theta3)) {
        throw std::invalid_argument("coupling parameters must be finite");
    }
    if (const auto* tab = std::get_if<Mu0Tabulated>(&mu0)) {
        if (tab->t.size() < 2 || tab->t.size() != tab->mu0.size()) {
            throw std::invalid_argument("tabulated mu0 needs matching t/mu0 samples");
        }
        for (std::size_t i = 1; i < tab->t.size(); ++i) {
            if (!(tab->t[i] > tab->t[i - 1])) {
                throw std::invalid_argument("tabulated mu0 times must be strictly increasing");
            }
        }
    }
}

Mat2 CouplingConfig::a0() const {
    const cplx b = beta();
    // beta sigma_- + beta* sigma_+ + i Gamma sigma3
    return {cplx(0.0, gamma), std::conj(b), b, cplx(0.0, -gamma)};
}

double CouplingConfig::mu0_value(double t) const {
    return std::visit(
        [t](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, Mu0Constant>) {
                return fam.value;
            } else if constexpr (std::is_same_v<T, Mu0Cosine>) {
                return std::cos(fam.omega0 * t);
            } else if constexpr (std::is_same_v<T, Mu0Gaussian>) {
                return M_2_SQRTPI * std::exp(-t * t);
            } else {
                const auto& ts = fam.t;
                if (t < ts.front() || t > ts.back()) {
                    throw TableRangeError("t outside tabulated mu0 range");
                }
                const auto it = std::upper_bound(ts.begin(), ts.end(), t);
                const std::size_t i = std::min<std::size_t>(ts.size() - 1,
                                                            std::max<std::ptrdiff_t>(1, it - ts.begin())) - 1;
                const double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
                return fam.mu0[i] * (1.0 - w) + fam.mu0[i + 1] * w;
            }
        },
        mu0);
}

Mat2 CouplingConfig::a_of_t(double t) const { return a0() * mu0_value(t); }

SpectralRegime classify_regime(const CouplingConfig& cfg) {
    const double e2 = cfg.eps0_sq();
    if (std::abs(e2) < kRegimeTol) return {RegimeTag::ZeroEps, 0.0};
    if (e2 > 0.0) return {RegimeTag::PositiveEps, std::sqrt(e2)};
    return {RegimeTag::ImaginaryEps, std::sqrt(-e2)};
}

namespace {

// mu(t) = int_0^t mu0 for the tabulated family: exact integral of the linear
// interpolant, anchored so that mu(0) = 0 when 0 is inside the table, else
// anchored at the first sample.
double mu_tabulated(const Mu0Tabulated& tab, double t) {
    const auto& ts = tab.t;
    if (t < ts.front() || t > ts.back()) {
        throw TableRangeError("t outside tabulated mu0 range");
    }
    auto cumulative_to = [&](double tq) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            if (tq <= ts[i]) break;
            const double hi = std::min(tq, ts[i + 1]);
            const double w = (hi - ts[i]) / (ts[i + 1] - ts[i]);
            const double v1 = tab.mu0[i + 1] * w + tab.mu0[i] * (1.0 - w);
            acc += 0.5 * (tab.mu0[i] + v1) * (hi - ts[i]);
            if (tq < ts[i + 1]) break;
        }
        return acc;
    };
    const double anchor = (ts.front() <= 0.0 && 0.0 <= ts.back()) ? cumulative_to(0.0) : 0.0;
    return cumulative_to(t) - anchor;
}

}  // namespace

std::pair<double, double> mu_epsilon(const CouplingConfig& cfg, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("mu_epsilon: t must be finite");
    const double mu = std::visit(
        [&, t](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, Mu0Constant>) {
                return fam.value * t;
            } else if constexpr (std::is_same_v<T, Mu0Cosine>) {
                return std::sin(fam.omega0 * t) / fam.omega0;
            } else if constexpr (std::is_same_v<T, Mu0Gaussian>) {
                return std::erf(t);
            } else {
                return mu_tabulated(fam, t);
            }
        },
        cfg.mu0);
    return {mu, mu * classify_regime(cfg).eps0};
}

namespace detail {

double cos1(double z) {
    if (std::abs(z) < 2.5e-3) {
        // cos(sqrt z) = 1 - z/2 + z^2/24 - z^3/720 + z^4/40320
        return 1.0 + z * (-0.5 + z * (1.0 / 24.0 + z * (-1.0 / 720.0 + z / 40320.0)));
    }
    if (z > 0.0) return std::cos(std::sqrt(z));
    return std::cosh(std::sqrt(-z));
}

double sinc1(double z) {
    if (std::abs(z) < 2.5e-3) {
        // sin(sqrt z)/sqrt z = 1 - z/6 + z^2/120 - z^3/5040 + z^4/362880
        return 1.0 + z * (-1.0 / 6.0 + z * (1.0 / 120.0 + z * (-1.0 / 5040.0 + z / 362880.0)));
    }
    if (z > 0.0) {
        const double e = std::sqrt(z);
        return std::sin(e) / e;
    }
    const double e = std::sqrt(-z);
    return std::sinh(e) / e;
}

}  // namespace detail

Mat2 u_matrix(const CouplingConfig& cfg, double t) {
    const double mu = mu_epsilon(cfg, t).first;
    const double z = mu * mu * cfg.eps0_sq();
    const Mat2 a0 = cfg.a0();
    return Mat2::identity() * detail::cos1(z) + a0 * cplx(0.0, -mu * detail::sinc1(z));
}

double p1_factor(const CouplingConfig& cfg, const AmplitudeVector& amp, double t) {
    const Mat2 u = u_matrix(cfg, t);
    const Vec2c uw = u * amp.w();
    return uw.norm_sq();
}

double p1_closed_form(const CouplingConfig& cfg, const AmplitudeVector& amp, double t) {
    const double e2 = cfg.eps0_sq();
    if (!(e2 > 0.0)) {
        throw std::domain_error("p1_closed_form requires eps0^2 > 0 (|beta| > Gamma)");
    }
    const double mu = mu_epsilon(cfg, t).first;
    const double z = mu * mu * e2;
    const double b0 = amp.b0();
    const double b3 = amp.b3();
    const double d = cfg.gamma +
                     2.0 / b0 * amp.w1 * amp.w2 * cfg.beta_abs *
                         std::sin(amp.theta2 - amp.theta1 - cfg.theta3);
    const double s1 = detail::sinc1(z);
    // sin^2(eps)/eps0^2 = mu^2 sinc1(z)^2; sin(2 eps)/eps0 = 2 mu sinc1(4z)
    return b0 * (1.0 + 2.0 * cfg.gamma * d * mu * mu * s1 * s1) +
           2.0 * b3 * cfg.gamma * mu * detail::sinc1(4.0 * z);
}

Mat2 eta_metric(const CouplingConfig& cfg) {
    if (cfg.gamma == 0.0) return Mat2::identity();
    if (cfg.beta_abs * cfg.beta_abs - cfg.gamma * cfg.gamma <= kRegimeTol) {
        throw NoMetricError("no positive-definite eta exists for |beta| <= Gamma");
    }
    // A0^dag eta = eta A0 with eta = [[1, c],[c*, 1]] requires
    // Im(beta c) = -Gamma, i.e. c = e^{-i theta3} (u - i Gamma/|beta|);
    // the minimal-off-diagonal member u = 0 is positive definite iff Gamma < |beta|.
    const cplx c = cplx(0.0, -cfg.gamma / cfg.beta_abs) * std::exp(cplx(0.0, -cfg.theta3));
    return {1.0, c, std::conj(c), 1.0};
}

}  // namespace nlse
