#include <cmath>

#include "elastocloak/kernels.hpp"
#include "elastocloak/specfun.hpp"

namespace elastocloak {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = M_PI;
constexpr int kSeriesTerms2d = 40;

struct Moduli {
  cplx mu, p;  // shear modulus and lambda + 2 mu
  cplx a() const { return 1.0 / mu - 1.0 / p; }  // (lambda + mu) / (mu (lambda + 2 mu))
  cplx b() const { return 1.0 / mu + 1.0 / p; }  // (lambda + 3 mu) / (mu (lambda + 2 mu))
};

Moduli moduli(const IsotropicMedium& m) { return {m.mu, m.lambda + 2.0 * m.mu}; }

void require_separation(double r) {
  if (!(r > 0.0)) throw SingularityError("fundamental solution is singular at x == y");
}

RadialProfile static_profile(double r, const Moduli& md, int dim) {
  RadialProfile p;
  if (dim == 2) {
    p.p1 = -md.b() / (4.0 * kPi) * std::log(r);
    p.p2 = md.a() / (4.0 * kPi);
    p.dp1 = -md.b() / (4.0 * kPi * r);
    p.dp2 = 0.0;
  } else {
    p.p1 = md.b() / (8.0 * kPi * r);
    p.p2 = md.a() / (8.0 * kPi * r);
    p.dp1 = -md.b() / (8.0 * kPi * r * r);
    p.dp2 = -md.a() / (8.0 * kPi * r * r);
  }
  return p;
}

// Radial derivatives f, f', f'', f''' of the scalar outgoing kernel.
std::array<cplx, 4> scalar_kernel(cplx k, double r, int dim) {
  if (dim == 2) {
    const cplx z = k * r;
    const auto h = specfun::hankel1_orders(1, z);
    const cplx h1p = h[0] - h[1] / z;
    const cplx h1pp = -h1p / z - (1.0 - 1.0 / (z * z)) * h[1];
    return {0.25 * kI * h[0], -0.25 * kI * k * h[1], -0.25 * kI * k * k * h1p, -0.25 * kI * k * k * k * h1pp};
  }
  const cplx e = std::exp(kI * k * r) / (4.0 * kPi);
  const cplx kr = k * r;
  return {e / r, e * (kI * kr - 1.0) / (r * r), e * (2.0 - 2.0 * kI * kr - kr * kr) / (r * r * r),
          e * (-6.0 + 6.0 * kI * kr + 3.0 * kr * kr - kI * kr * kr * kr) / (r * r * r * r)};
}

RadialProfile closed_profile(double r, double omega, const IsotropicMedium& m, int dim) {
  const Wavenumbers k = wavenumbers(m, omega);
  const auto fs = scalar_kernel(k.ks, r, dim);
  const auto fp = scalar_kernel(k.kp, r, dim);
  const cplx inv = 1.0 / (m.rho * omega * omega);
  const cplx d1 = fs[1] - fp[1], d2 = fs[2] - fp[2], d3 = fs[3] - fp[3];
  RadialProfile p;
  p.p1 = fs[0] / m.mu + inv * d1 / r;
  p.p2 = inv * (d2 - d1 / r);
  p.dp1 = fs[1] / m.mu + inv * (d2 / r - d1 / (r * r));
  p.dp2 = inv * (d3 - d2 / r + d1 / (r * r));
  return p;
}

// Coefficients of the 2D small-argument expansion. f_s = sum (c_m + d_m ln r) r^{2m};
// (f_s - f_p) / (rho omega^2) = sum (C_m + D_m ln r) r^{2m}.
struct Series2d {
  std::array<cplx, kSeriesTerms2d> c, d, C, D;
};

Series2d series_2d(double omega, const IsotropicMedium& m) {
  const Moduli md = moduli(m);
  const Wavenumbers k = wavenumbers(m, omega);
  const cplx w2 = m.rho * omega * omega;
  const cplx ls = std::log(k.ks / 2.0), lp = std::log(k.kp / 2.0);
  Series2d s;
  double harmonic = 0.0;
  double inv_fact2 = 1.0;  // 1 / (m!)^2
  cplx w2pow = 1.0;        // (rho omega^2)^{m-1} for m >= 1
  for (int j = 0; j < kSeriesTerms2d; ++j) {
    if (j > 0) {
      harmonic += 1.0 / j;
      inv_fact2 /= static_cast<double>(j) * j;
    }
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double base = sign * inv_fact2 / std::pow(4.0, j);
    const cplx q = base * std::pow(k.ks, 2 * j);  // (-1)^m (k/2)^{2m} / (m!)^2
    s.c[j] = q * (0.25 * kI - (ls + specfun::kEulerGamma) / (2.0 * kPi) + harmonic / (2.0 * kPi));
    s.d[j] = -q / (2.0 * kPi);
    if (j == 0) {
      s.C[j] = 0.0;
      s.D[j] = 0.0;
      continue;
    }
    const cplx e = base * w2pow * (std::pow(md.mu, -j) - std::pow(md.p, -j));
    const cplx l = base * w2pow * (std::pow(md.mu, -j) * ls - std::pow(md.p, -j) * lp);
    s.C[j] = e * (0.25 * kI - specfun::kEulerGamma / (2.0 * kPi) + harmonic / (2.0 * kPi)) - l / (2.0 * kPi);
    s.D[j] = -e / (2.0 * kPi);
    w2pow *= w2;
  }
  return s;
}

RadialProfile series_profile_2d(double r, const Series2d& s, const cplx& mu) {
  const double lr = std::log(r);
  cplx fs = 0.0, fsp = s.d[0] / r, p1 = 0.0, p2 = 0.0, dp2 = 0.0;
  double r2m = 1.0;  // r^{2m}
  for (int j = 0; j < kSeriesTerms2d; ++j) {
    const double m = j;
    fs += (s.c[j] + s.d[j] * lr) * r2m;
    if (j >= 1) {
      const double r2m2 = r2m / (r * r);  // r^{2m-2}
      fsp += (2.0 * m * (s.c[j] + s.d[j] * lr) + s.d[j]) * r2m / r;
      const cplx cl = s.C[j] + s.D[j] * lr;
      p1 += (2.0 * m * cl + s.D[j]) * r2m2;
      p2 += (4.0 * m * (m - 1.0) * cl + (4.0 * m - 2.0) * s.D[j]) * r2m2;
      if (j >= 2) dp2 += (8.0 * m * (m - 1.0) * (m - 1.0) * cl + 4.0 * (3.0 * m - 1.0) * (m - 1.0) * s.D[j]) * r2m2 / r;
    }
    r2m *= r * r;
  }
  RadialProfile p;
  p.p1 = fs / mu + p1;
  p.p2 = p2;
  p.dp1 = fsp / mu + p2 / r;
  p.dp2 = dp2;
  return p;
}

RadialProfile series_profile_3d(double r, double omega, const IsotropicMedium& m, int terms) {
  const Moduli md = moduli(m);
  const cplx w = omega * std::sqrt(m.rho);
  const cplx cs = std::sqrt(md.mu), cp = std::sqrt(md.p);
  RadialProfile p;
  cplx iw_n = 1.0;   // (i w)^n
  double fact = 1.0;  // n!
  for (int n = 0; n < terms; ++n) {
    if (n > 0) {
      iw_n *= kI * w;
      fact *= n;
    }
    const cplx ps = std::pow(cs, -(n + 2)), pp = std::pow(cp, -(n + 2));
    const cplx coef = iw_n / ((n + 2.0) * fact) / (4.0 * kPi);
    const cplx a1 = coef * ((n + 1.0) * ps + pp);
    const cplx a2 = -coef * (n - 1.0) * (ps - pp);
    const double rn1 = std::pow(r, n - 1), rn2 = std::pow(r, n - 2);
    p.p1 += a1 * rn1;
    p.p2 += a2 * rn1;
    p.dp1 += a1 * (n - 1.0) * rn2;
    p.dp2 += a2 * (n - 1.0) * rn2;
  }
  return p;
}

double max_wavenumber(double omega, const IsotropicMedium& m) {
  const Wavenumbers k = wavenumbers(m, omega);
  return std::max(std::abs(k.kp), std::abs(k.ks));
}

Eigen::MatrixXcd assemble(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const RadialProfile& p) {
  const int d = static_cast<int>(x.size());
  const Eigen::VectorXd e = (x - y) / (x - y).norm();
  return p.p1 * Eigen::MatrixXcd::Identity(d, d) + p.p2 * (e * e.transpose()).cast<cplx>();
}

void require_points(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size() || (x.size() != 2 && x.size() != 3)) throw DomainError("points must share dimension 2 or 3");
}

}  // namespace

RadialProfile green_profile(double r, double omega, const IsotropicMedium& m, int dim, GreenMethod method) {
  require_separation(r);
  if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3");
  if (omega < 0.0) throw DomainError("omega must be non-negative");
  if (omega == 0.0) return static_profile(r, moduli(m), dim);
  const double kr = max_wavenumber(omega, m) * r;
  if (dim == 2) {
    const bool series = method == GreenMethod::Series || (method == GreenMethod::Auto && kr <= 2.0);
    return series ? series_profile_2d(r, series_2d(omega, m), m.mu) : closed_profile(r, omega, m, 2);
  }
  const bool series = method == GreenMethod::Series || (method == GreenMethod::Auto && kr <= 1.0);
  return series ? series_profile_3d(r, omega, m, 40) : closed_profile(r, omega, m, 3);
}

LogSplitProfile green_log_split_2d(double r, double omega, const IsotropicMedium& m) {
  if (r < 0.0) throw DomainError("negative separation");
  LogSplitProfile out;
  const Moduli md = moduli(m);
  if (omega == 0.0) {
    out.a1 = -md.b() / (4.0 * kPi);
    out.b2 = md.a() / (4.0 * kPi);
    return out;
  }
  const Series2d s = series_2d(omega, m);
  const bool series = max_wavenumber(omega, m) * r <= 2.0;
  for (int j = 0; j < kSeriesTerms2d; ++j) {
    const double mm = j;
    const double r2m = std::pow(r, 2 * j);
    out.a1 += s.d[j] * r2m / m.mu;
    if (series) out.b1 += s.c[j] * r2m / m.mu;
    if (j == 0) continue;
    const double r2m2 = std::pow(r, 2 * j - 2);
    out.a1 += 2.0 * mm * s.D[j] * r2m2;
    out.a2 += 4.0 * mm * (mm - 1.0) * s.D[j] * r2m2;
    if (series) {
      out.b1 += (2.0 * mm * s.C[j] + s.D[j]) * r2m2;
      out.b2 += (4.0 * mm * (mm - 1.0) * s.C[j] + (4.0 * mm - 2.0) * s.D[j]) * r2m2;
    }
    out.da1 += 2.0 * mm * s.d[j] * std::pow(r, 2 * j - 1) / m.mu;
    if (j >= 2) {
      const double r2m3 = std::pow(r, 2 * j - 3);
      out.da1 += 2.0 * mm * (2.0 * mm - 2.0) * s.D[j] * r2m3;
      out.da2 += 4.0 * mm * (mm - 1.0) * (2.0 * mm - 2.0) * s.D[j] * r2m3;
    }
  }
  if (!series) {
    const RadialProfile p = closed_profile(r, omega, m, 2);
    const double lr = std::log(r);
    out.b1 = p.p1 - out.a1 * lr;
    out.b2 = p.p2 - out.a2 * lr;
  }
  return out;
}

Eigen::MatrixXcd green_omega(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double omega,
                             const IsotropicMedium& m, GreenMethod method) {
  require_points(x, y);
  if (omega == 0.0) throw DomainError("omega == 0: use green_static");
  return assemble(x, y, green_profile((x - y).norm(), omega, m, static_cast<int>(x.size()), method));
}

Eigen::MatrixXcd green_static(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const IsotropicMedium& m) {
  require_points(x, y);
  return assemble(x, y, green_profile((x - y).norm(), 0.0, m, static_cast<int>(x.size())));
}

Eigen::MatrixXcd green_omega_series_3d(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double omega,
                                       const IsotropicMedium& m, int terms) {
  if (x.size() != 3 || y.size() != 3) throw DomainError("3D series needs 3D points");
  const double r = (x - y).norm();
  require_separation(r);
  return assemble(x, y, series_profile_3d(r, omega, m, terms));
}

cplx eta_2d(double omega, const IsotropicMedium& m) {
  if (!(omega > 0.0)) throw DomainError("eta needs omega > 0");
  const Series2d s = series_2d(omega, m);
  return s.c[0] / m.mu + 2.0 * s.C[1] + s.D[1];
}

Eigen::Matrix2cd asymptotic_gap_2d(const Eigen::Vector2d& x, const Eigen::Vector2d& y, double omega,
                                   const IsotropicMedium& m) {
  return asymptotic_gap_2d(x, y, omega, m, eta_2d(omega, m));
}

Eigen::Matrix2cd asymptotic_gap_2d(const Eigen::Vector2d& x, const Eigen::Vector2d& y, double omega,
                                   const IsotropicMedium& m, cplx eta) {
  const Eigen::VectorXd xv = x, yv = y;
  return green_omega(xv, yv, omega, m) - green_static(xv, yv, m) - eta * Eigen::Matrix2cd::Identity();
}

Eigen::Matrix2cd traction_kernel_2d(const Eigen::Vector2d& x, const Eigen::Vector2d& y, const Eigen::Vector2d& nu,
                                    double omega, const IsotropicMedium& m) {
  const double r = (x - y).norm();
  const RadialProfile p = green_profile(r, omega, m, 2);
  const Eigen::Vector2d e = (x - y) / r;
  const double en = e.dot(nu);
  const cplx q = p.p2 / r;
  Eigen::Matrix2cd xi;
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k) {
      const double dlk = l == k ? 1.0 : 0.0;
      cplx v = -m.lambda * nu(k) * (p.dp1 + p.dp2 + q) * e(l);
      v -= m.mu * (p.dp1 * en * dlk + p.dp2 * en * e(k) * e(l) + q * (nu(k) * e(l) + nu(l) * e(k) - 2.0 * e(k) * e(l) * en));
      v -= m.mu * (p.dp1 * e(k) * nu(l) + p.dp2 * en * e(k) * e(l) + q * (nu(k) * e(l) + dlk * en - 2.0 * e(l) * e(k) * en));
      xi(l, k) = v;
    }
  return xi;
}

}  // namespace elastocloak
