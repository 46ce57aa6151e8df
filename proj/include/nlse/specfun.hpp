#pragma once

// Self-contained special functions needed by the closed-form solutions:
// Jacobi elliptic sn/cn/dn and the complete elliptic integral K(m) via the
// arithmetic-geometric mean with a descending Landen transformation, plus the
// error function pair (erf, erfi).
//
// Conventions: the second argument is the squared modulus m = r^2, so
// sn(u, m=0) = sin(u) and sn(u, m=1) = tanh(u).

namespace nlse {

struct EllipticModulus {
    double m;  // squared modulus r^2, in [0, 1]

    // Clamps excursions of at most 1e-12 outside [0,1] (root arithmetic);
    // throws std::domain_error beyond that.
    explicit EllipticModulus(double m_in);
};

struct JacobiTriple {
    double sn, cn, dn;
};

// sn/cn/dn by AGM + backward Landen recurrence. Arguments |u| beyond one
// period are reduced modulo 4K(m) first.
JacobiTriple jacobi_elliptic(double u, EllipticModulus m);

// Complete elliptic integral of the first kind, K(m) = pi / (2 agm(1, sqrt(1-m))).
// Diverges as m -> 1; throws for m == 1.
double elliptic_k(EllipticModulus m);

struct ErfPair {
    double erf;
    double erfi;
    bool erfi_overflow;  // erfi was capped at the largest representable value
};

// erf via the standard library; erfi by Maclaurin series (all-positive terms,
// |x| < 6) or the asymptotic expansion e^{x^2}/(x sqrt(pi)) (|x| >= 6).
ErfPair erf_family(double x);

}  // namespace nlse
