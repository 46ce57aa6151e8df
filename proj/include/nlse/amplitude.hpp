#pragma once

#include <cmath>
#include <stdexcept>

#include "nlse/matrix2.hpp"

namespace nlse {

// The constant complex vector W = (W1 e^{i theta1}, W2 e^{i theta2})^T of the
// separation ansatz, plus the quadratic scalars derived from it.
struct AmplitudeVector {
    double w1 = 1.0;
    double w2 = 1.0;
    double theta1 = 0.0;
    double theta2 = 0.0;

    void validate() const {
        if (w1 < 0.0 || w2 < 0.0) throw std::invalid_argument("W1, W2 must be >= 0");
        if (b0() <= 0.0) throw std::invalid_argument("b0 = W1^2 + W2^2 must be positive");
    }

    double b0() const { return w1 * w1 + w2 * w2; }
    double b3() const { return w1 * w1 - w2 * w2; }

    Vec2c w() const {
        return {w1 * std::exp(cplx(0.0, theta1)), w2 * std::exp(cplx(0.0, theta2))};
    }
};

}  // namespace nlse
