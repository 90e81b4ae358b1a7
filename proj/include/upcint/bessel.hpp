#pragma once

namespace upcint::special {

// Modified Bessel functions of the second kind, x > 0. Chebyshev expansions
// (series in x^2 with the I0/I1 logarithmic term for x <= 2, expansions in
// 1/x above), relative accuracy close to machine precision.
double bessel_k0(double x);
double bessel_k1(double x);

// Exponentially scaled forms e^x K(x); well-defined for large x.
double bessel_k0e(double x);
double bessel_k1e(double x);

// Modified Bessel functions of the first kind for 0 <= x <= 3.
double bessel_i0_small(double x);
double bessel_i1_small(double x);

/// Cylindrical Bessel J0.
double bessel_j0(double x);

}  // namespace upcint::special
