#pragma once

#include <stdexcept>
#include <vector>

namespace nlse {

// Uniform 1-D spatial grid plus the time samples shared by verification and
// evolution. x(i) = x_min + i*dx, i = 0..n_x-1 (x_max is the right edge of
// the periodic cell, not a sample).
struct GridSpec {
    double x_min = -20.0;
    double x_max = 20.0;
    int n_x = 1024;
    std::vector<double> t_samples;

    void validate() const {
        if (!(x_max > x_min)) throw std::invalid_argument("grid: x_max must exceed x_min");
        if (n_x < 16) throw std::invalid_argument("grid: n_x must be >= 16");
        for (std::size_t i = 1; i < t_samples.size(); ++i) {
            if (!(t_samples[i] > t_samples[i - 1])) {
                throw std::invalid_argument("grid: t_samples must be strictly increasing");
            }
        }
    }

    double dx() const { return (x_max - x_min) / n_x; }
    double x(int i) const { return x_min + i * dx(); }
    std::vector<double> xs() const {
        std::vector<double> v(n_x);
        for (int i = 0; i < n_x; ++i) v[i] = x(i);
        return v;
    }

    static std::vector<double> linspace(double a, double b, int n) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
        return v;
    }
};

}  // namespace nlse
