#include "elastocloak/specfun.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "elastocloak/errors.hpp"

namespace elastocloak::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesRadius = 1.0;
constexpr double kAsymptoticRadius = 17.0;
const cplx kI(0.0, 1.0);

void require_finite(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("Bessel argument is not finite");
}

void require_order(int n) {
  if (n < 0) throw DomainError("Bessel order must be non-negative");
}

// exp(-|Im z|) for the J family in scaled mode.
double j_scale(cplx z) { return std::exp(-std::abs(z.imag())); }

// Ascending series; used only for |z| <= kSeriesRadius where every term is smaller than the last.
std::vector<cplx> j_series(int n_max, cplx z, bool scaled) {
  std::vector<cplx> out(n_max + 1);
  const cplx half = 0.5 * z;
  const cplx q = -half * half;
  cplx lead = 1.0;  // (z/2)^n / n!
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) lead *= half / static_cast<double>(n);
    cplx term = lead, sum = lead;
    for (int k = 1; k < 60; ++k) {
      term *= q / (static_cast<double>(k) * static_cast<double>(n + k));
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    out[n] = scaled ? sum * j_scale(z) : sum;
  }
  return out;
}

// Miller backward recurrence normalized with exp(-i s z) = J0 + 2 sum (-i s)^k J_k,
// with s chosen so the normalizing exponential is the large one. Returns orders 0..top.
std::vector<cplx> j_miller(int n_max, cplx z, bool scaled, int& top) {
  const double a = std::abs(z);
  const int m = std::max(n_max, static_cast<int>(a));
  top = m + 40 + static_cast<int>(6.0 * std::sqrt(static_cast<double>(m) + 1.0));
  std::vector<cplx> f(top + 2, cplx(0.0));
  const double s = z.imag() >= 0.0 ? 1.0 : -1.0;
  const cplx w = cplx(0.0, -s);  // -i s
  // Powers of w cycle with period 4.
  const cplx wpow[4] = {1.0, w, w * w, w * w * w};

  f[top + 1] = 0.0;
  f[top] = 1e-300;
  cplx norm = 2.0 * wpow[top % 4] * f[top];
  for (int k = top; k >= 1; --k) {
    f[k - 1] = (2.0 * k / z) * f[k] - f[k + 1];
    norm += (k - 1 == 0 ? 1.0 : 2.0 * wpow[(k - 1) % 4]) * f[k - 1];
    if (std::abs(f[k - 1]) > 1e250) {
      for (int j = k - 1; j <= top + 1; ++j) f[j] *= 1e-250;
      norm *= 1e-250;
    }
  }
  // Target exp(-i s z); the scaled target drops the exp(|Im z|) magnitude.
  const cplx target = scaled ? std::exp(cplx(0.0, -s * z.real())) : std::exp(-kI * s * z);
  const cplx c = target / norm;
  for (auto& v : f) v *= c;
  f.resize(top + 1);
  return f;
}

// Returns J_0..J_top with top >= n_max (extra orders feed the Neumann series for Y).
std::vector<cplx> j_all(int n_max, cplx z, bool scaled) {
  if (z == cplx(0.0)) {
    std::vector<cplx> out(n_max + 1, cplx(0.0));
    out[0] = 1.0;
    return out;
  }
  if (std::abs(z) <= kSeriesRadius) return j_series(std::max(n_max, 40), z, scaled);
  int top = 0;
  return j_miller(n_max, z, scaled, top);
}

// Y0, Y1 from Neumann series over J values (same scaling as J).
void y01_neumann(const std::vector<cplx>& j, cplx z, cplx& y0, cplx& y1) {
  const cplx lg = std::log(0.5 * z) + kEulerGamma;
  cplx s0 = 0.0, s1 = 0.0;
  const int top = static_cast<int>(j.size()) - 1;
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    const double sg = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sg * j[2 * k] / static_cast<double>(k);
    s1 += sg * (j[2 * k - 1] - j[2 * k + 1]) / static_cast<double>(k);
  }
  y0 = (2.0 / kPi) * lg * j[0] - (4.0 / kPi) * s0;
  y1 = (2.0 / kPi) * (lg * j[1] - j[0] / z) + (2.0 / kPi) * s1;
}

// Logarithmic derivative H1_0'/H1_0 by the Temme continued fraction (modified Lentz).
cplx h0_logderiv_cf(cplx z) {
  const double tiny = 1e-300;
  cplx f = tiny, c = f, d = 0.0;
  for (int k = 1; k < 100000; ++k) {
    const double ak = (k - 0.5) * (k - 0.5);
    const cplx bk = 2.0 * (z + cplx(0.0, static_cast<double>(k)));
    d = bk + ak * d;
    if (d == cplx(0.0)) d = tiny;
    c = bk + ak / c;
    if (c == cplx(0.0)) c = tiny;
    d = 1.0 / d;
    const cplx delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return -0.5 / z + kI + (kI / z) * f;
}

// Hankel asymptotic expansion, returned in scaled form H1 * exp(-i z).
cplx h1_asymptotic_scaled(int n, cplx z) {
  const double mu = 4.0 * n * n;
  cplx sum = 1.0, term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 80; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= kI * (mu - odd * odd) / (8.0 * k * z);
    const double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    last = mag;
    if (mag < 1e-17 * std::abs(sum)) break;
  }
  const double phase = -(n * kPi / 2.0 + kPi / 4.0);
  return std::sqrt(2.0 / (kPi * z)) * std::exp(cplx(0.0, phase)) * sum;
}

// Unscaled H1 from its scaled value.
cplx unscale_h(cplx hs, cplx z) { return hs * std::exp(kI * z); }

// H1_0 and H1_1 in the requested scaling, given J (same scaling) for the small and CF paths.
void h01(cplx z, bool scaled, const std::vector<cplx>& j, cplx& h0, cplx& h1) {
  const double a = std::abs(z);
  if (a >= kAsymptoticRadius) {
    h0 = h1_asymptotic_scaled(0, z);
    h1 = h1_asymptotic_scaled(1, z);
    if (!scaled) {
      h0 = unscale_h(h0, z);
      h1 = unscale_h(h1, z);
    }
    return;
  }
  if (z.imag() > 1.0 && a >= 2.0) {
    // Upper half-plane: H1 is recessive, so J + iY would cancel. Use the Wronskian with the CF ratio.
    const cplx p = h0_logderiv_cf(z);
    const cplx den = kPi * z * (j[0] * p + j[1]);
    // With J scaled by exp(-Im z), exp(-i z) * 2i / (pi z (J p + J1)) becomes exp(-i Re z) * 2i / den.
    const cplx num = scaled ? 2.0 * kI * std::exp(cplx(0.0, -z.real())) : 2.0 * kI;
    h0 = num / den;
    h1 = -p * h0;
    return;
  }
  cplx y0, y1;
  y01_neumann(j, z, y0, y1);
  h0 = j[0] + kI * y0;
  h1 = j[1] + kI * y1;
  if (scaled) {
    // J, Y carry exp(-|y|); convert to exp(-i z).
    const cplx f = std::exp(cplx(std::abs(z.imag()) + z.imag(), -z.real()));
    h0 *= f;
    h1 *= f;
  }
}

std::vector<cplx> h_upward(int n_max, cplx z, cplx h0, cplx h1) {
  std::vector<cplx> h(std::max(n_max, 1) + 1);
  h[0] = h0;
  h[1] = h1;
  for (int n = 1; n < n_max; ++n) h[n + 1] = (2.0 * n / z) * h[n] - h[n - 1];
  h.resize(n_max + 1);
  return h;
}

struct Families {
  std::vector<cplx> j, y, h;
};

// Orders 0..n_max of J, Y, H1 sharing one J evaluation.
Families families(int n_max, cplx z, bool scaled) {
  Families out;
  if (z.imag() < 0.0) {
    // Upward recurrence for H1 is unstable below the real axis (H2 is recessive there).
    // Reflect: H1_n(z) = 2 J_n(z) - conj(H1_n(conj z)).
    const Families up = families(n_max, std::conj(z), scaled);
    const cplx phase = scaled ? std::exp(cplx(0.0, -z.real())) : cplx(1.0);
    const cplx damp = scaled ? std::exp(2.0 * kI * std::conj(z)) : cplx(1.0);
    out.j.resize(n_max + 1);
    out.h.resize(n_max + 1);
    out.y.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
      out.j[n] = std::conj(up.j[n]);
      out.h[n] = 2.0 * out.j[n] * phase - std::conj(up.h[n] * damp);
      // Y_n(conj z) = conj(Y_n(z)) and both carry the same exp(-|Im z|) factor.
      out.y[n] = std::conj(up.y[n]);
    }
    return out;
  }
  std::vector<cplx> j = j_all(n_max, z, scaled);
  cplx h0, h1;
  h01(z, scaled, j, h0, h1);
  out.h = h_upward(n_max, z, h0, h1);
  j.resize(n_max + 1);
  out.j = j;
  out.y.resize(n_max + 1);
  // Y = (H1 - J)/i; in scaled mode H1 carries exp(-i z) and Y carries exp(-|Im z|).
  const cplx hfac = scaled ? std::exp(cplx(-z.imag() - std::abs(z.imag()), z.real())) : cplx(1.0);
  for (int n = 0; n <= n_max; ++n) out.y[n] = (out.h[n] * hfac - out.j[n]) / kI;
  return out;
}

// Value at signed order m via Z_{-m} = (-1)^m Z_m.
cplx at_order(const std::vector<cplx>& v, int m) {
  if (m >= 0) return v[m];
  return (m % 2 == 0) ? v[-m] : -v[-m];
}

cplx first_derivative(const std::vector<cplx>& v, int n) { return 0.5 * (at_order(v, n - 1) - at_order(v, n + 1)); }

cplx second_derivative(const std::vector<cplx>& v, int n) {
  return 0.25 * (at_order(v, n - 2) - 2.0 * v[n] + at_order(v, n + 2));
}

}  // namespace

std::vector<cplx> bessel_j_orders(int n_max, cplx z, bool scaled) {
  require_order(n_max);
  require_finite(z);
  std::vector<cplx> j = j_all(n_max, z, scaled);
  j.resize(n_max + 1);
  return j;
}

std::vector<cplx> hankel1_orders(int n_max, cplx z, bool scaled) {
  require_order(n_max);
  require_finite(z);
  if (z == cplx(0.0)) throw SingularityError("Hankel function is singular at z = 0");
  return families(n_max, z, scaled).h;
}

cplx bessel_j(int n, cplx z, bool scaled) { return bessel_j_orders(n, z, scaled)[n]; }

cplx bessel_j_prime(int n, cplx z, bool scaled) {
  require_order(n);
  return first_derivative(bessel_j_orders(n + 1, z, scaled), n);
}

cplx bessel_j_second(int n, cplx z, bool scaled) {
  require_order(n);
  return second_derivative(bessel_j_orders(n + 2, z, scaled), n);
}

cplx bessel_y(int n, cplx z, bool scaled) {
  require_order(n);
  require_finite(z);
  if (z == cplx(0.0)) throw SingularityError("Y_n is singular at z = 0");
  return families(n, z, scaled).y[n];
}

cplx hankel1(int n, cplx z, bool scaled) { return hankel1_orders(n, z, scaled)[n]; }

cplx hankel1_prime(int n, cplx z, bool scaled) {
  require_order(n);
  return first_derivative(hankel1_orders(n + 1, z, scaled), n);
}

CylEval cyl_eval(int n, cplx z, bool scaled) {
  require_order(n);
  require_finite(z);
  if (z == cplx(0.0)) throw SingularityError("cylinder functions Y, H1 are singular at z = 0");
  const Families f = families(n + 2, z, scaled);
  CylEval e;
  e.n = n;
  e.z = z;
  e.scaled = scaled;
  e.J = f.j[n];
  e.Y = f.y[n];
  e.H1 = f.h[n];
  e.Jp = first_derivative(f.j, n);
  e.Yp = first_derivative(f.y, n);
  e.H1p = first_derivative(f.h, n);
  e.Jpp = second_derivative(f.j, n);
  e.H1pp = second_derivative(f.h, n);
  return e;
}

double bessel_j_zero(int n, int k) {
  require_order(n);
  if (k < 1) throw DomainError("zero index must be >= 1");
  auto fn = [n](double x) { return bessel_j(n, cplx(x, 0.0)).real(); };
  const double step = 0.05;
  double a = (n == 0) ? step : static_cast<double>(n);
  double fa = fn(a);
  int found = 0;
  for (int it = 0; it < 1000000; ++it) {
    const double b = a + step;
    const double fb = fn(b);
    if (fa == 0.0 || (fa < 0.0) != (fb < 0.0)) {
      if (++found == k) {
        if (fa == 0.0) return a;
        boost::uintmax_t max_iter = 200;
        auto r = boost::math::tools::toms748_solve(fn, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52),
                                                   max_iter);
        return 0.5 * (r.first + r.second);
      }
    }
    a = b;
    fa = fb;
  }
  throw Error(ErrorKind::SearchWindow, "Bessel zero not bracketed");
}

}  // namespace elastocloak::specfun
