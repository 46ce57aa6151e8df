#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace nlse {

using cplx = std::complex<double>;

struct Vec2c {
    cplx c1{0.0, 0.0};
    cplx c2{0.0, 0.0};

    Vec2c operator+(const Vec2c& o) const { return {c1 + o.c1, c2 + o.c2}; }
    Vec2c operator-(const Vec2c& o) const { return {c1 - o.c1, c2 - o.c2}; }
    Vec2c operator*(cplx s) const { return {c1 * s, c2 * s}; }
    Vec2c operator*(double s) const { return {c1 * s, c2 * s}; }
    Vec2c& operator+=(const Vec2c& o) {
        c1 += o.c1;
        c2 += o.c2;
        return *this;
    }
    double norm_sq() const { return std::norm(c1) + std::norm(c2); }
    double norm() const { return std::sqrt(norm_sq()); }
};

inline Vec2c operator*(cplx s, const Vec2c& v) { return v * s; }
inline Vec2c operator*(double s, const Vec2c& v) { return v * s; }

// Dense 2x2 complex matrix, row-major.
struct Mat2 {
    cplx m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }
    static Mat2 sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mat2 sigma2() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
    static Mat2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
    static Mat2 p_plus() { return {1.0, 0.0, 0.0, 0.0}; }   // (sigma0 + sigma3)/2
    static Mat2 p_minus() { return {0.0, 0.0, 0.0, 1.0}; }  // (sigma0 - sigma3)/2
    static Mat2 sigma_plus() { return {0.0, 1.0, 0.0, 0.0}; }
    static Mat2 sigma_minus() { return {0.0, 0.0, 1.0, 0.0}; }

    Mat2 operator+(const Mat2& o) const {
        return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
    }
    Mat2 operator-(const Mat2& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    Mat2 operator*(cplx s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
    Mat2 operator*(double s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
    Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    Vec2c operator*(const Vec2c& v) const {
        return {m00 * v.c1 + m01 * v.c2, m10 * v.c1 + m11 * v.c2};
    }

    Mat2 adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }
    cplx trace() const { return m00 + m11; }
    cplx det() const { return m00 * m11 - m01 * m10; }
    Mat2 inverse() const {
        const cplx d = det();
        return {m11 / d, -m01 / d, -m10 / d, m00 / d};
    }
    double max_abs() const {
        return std::max(std::max(std::abs(m00), std::abs(m01)),
                        std::max(std::abs(m10), std::abs(m11)));
    }
    double fro_norm() const {
        return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
    }
};

inline Mat2 operator*(cplx s, const Mat2& m) { return m * s; }
inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

// <a| M |b> for column vectors a, b.
inline cplx sandwich(const Vec2c& a, const Mat2& m, const Vec2c& b) {
    const Vec2c mb = m * b;
    return std::conj(a.c1) * mb.c1 + std::conj(a.c2) * mb.c2;
}

inline cplx inner(const Vec2c& a, const Vec2c& b) {
    return std::conj(a.c1) * b.c1 + std::conj(a.c2) * b.c2;
}

}  // namespace nlse
