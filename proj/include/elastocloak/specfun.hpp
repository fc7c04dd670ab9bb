#pragma once

#include <complex>
#include <vector>

namespace elastocloak::specfun {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Cylinder functions of integer order at complex argument.
// Scaled mode: J and Y carry exp(-|Im z|), H1 carries exp(-i z). Derivatives
// carry the same factor as the function they differentiate.
struct CylEval {
  int n = 0;
  cplx z;
  bool scaled = false;
  cplx J, Y, H1;
  cplx Jp, Yp, H1p;
  cplx Jpp, H1pp;
};

// J_0..J_nmax at z.
std::vector<cplx> bessel_j_orders(int n_max, cplx z, bool scaled = false);
// H1_0..H1_nmax at z; z must be nonzero.
std::vector<cplx> hankel1_orders(int n_max, cplx z, bool scaled = false);

cplx bessel_j(int n, cplx z, bool scaled = false);
cplx bessel_j_prime(int n, cplx z, bool scaled = false);
cplx bessel_j_second(int n, cplx z, bool scaled = false);
cplx bessel_y(int n, cplx z, bool scaled = false);
cplx hankel1(int n, cplx z, bool scaled = false);
cplx hankel1_prime(int n, cplx z, bool scaled = false);

CylEval cyl_eval(int n, cplx z, bool scaled = false);

// k-th positive zero of J_n (k >= 1) for real argument, refined by TOMS 748.
double bessel_j_zero(int n, int k);

}  // namespace elastocloak::specfun
