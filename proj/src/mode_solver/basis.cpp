#include <cmath>

#include "elastocloak/mode_solver.hpp"
#include "elastocloak/specfun.hpp"

namespace elastocloak {

namespace {

constexpr cplx kI{0.0, 1.0};

// Exponent that scaled evaluation strips: |Im z| for J, i z for H.
cplx stripped_exponent(RadialKind kind, cplx z) {
  return kind == RadialKind::J ? cplx(std::abs(z.imag()), 0.0) : kI * z;
}

}  // namespace

Wavenumbers wavenumbers(const IsotropicMedium& m, double omega) {
  const cplx kp = omega * std::sqrt(m.rho / (m.lambda + 2.0 * m.mu));
  const cplx ks = omega * std::sqrt(m.rho / m.mu);
  return {kp, ks};
}

PolarFields& PolarFields::operator+=(const PolarFields& o) {
  u_r += o.u_r;
  u_t += o.u_t;
  div += o.div;
  dr_ur += o.dr_ur;
  dr_ut += o.dr_ut;
  two_eps_rt += o.two_eps_rt;
  return *this;
}

PolarFields PolarFields::operator*(cplx s) const {
  PolarFields p = *this;
  p.u_r *= s;
  p.u_t *= s;
  p.div *= s;
  p.dr_ur *= s;
  p.dr_ut *= s;
  p.two_eps_rt *= s;
  return p;
}

PolarFields potential_fields(const IsotropicMedium& m, double omega, int n, double r, Wave wave, RadialKind kind,
                             double norm_radius) {
  if (!(r > 0.0)) throw DomainError("polar fields need r > 0");
  const Wavenumbers kw = wavenumbers(m, omega);
  const cplx k = wave == Wave::Pressure ? kw.kp : kw.ks;
  const int order = std::abs(n);
  const cplx z = k * r;
  const specfun::CylEval ev = specfun::cyl_eval(order, z, true);
  cplx zs, zps, zpps;
  if (kind == RadialKind::J) {
    zs = ev.J;
    zps = ev.Jp;
    zpps = ev.Jpp;
  } else {
    zs = ev.H1;
    zps = ev.H1p;
    zpps = ev.H1pp;
  }
  cplx factor;
  if (norm_radius > 0.0) {
    const cplx z0 = k * norm_radius;
    const specfun::CylEval e0 = specfun::cyl_eval(order, z0, true);
    const double n_scaled =
        kind == RadialKind::J ? std::max(std::abs(e0.J), std::abs(e0.Jp)) : std::max(std::abs(e0.H1), std::abs(e0.H1p));
    factor = std::exp(stripped_exponent(kind, z) - stripped_exponent(kind, z0).real()) / n_scaled;
  } else {
    factor = std::exp(stripped_exponent(kind, z));
  }
  const cplx R = factor * zs;
  const cplx Rp = factor * k * zps;
  const cplx Rpp = factor * k * k * zpps;
  const cplx in = kI * static_cast<double>(n);
  PolarFields f;
  if (wave == Wave::Pressure) {
    f.u_r = Rp;
    f.u_t = in * R / r;
    f.div = -k * k * R;
    f.dr_ur = Rpp;
    f.dr_ut = in * (Rp / r - R / (r * r));
    f.two_eps_rt = 2.0 * in * (Rp / r - R / (r * r));
  } else {
    const double n2 = static_cast<double>(n) * n;
    f.u_r = in * R / r;
    f.u_t = -Rp;
    f.div = 0.0;
    f.dr_ur = in * (Rp / r - R / (r * r));
    f.dr_ut = -Rpp;
    f.two_eps_rt = -n2 * R / (r * r) - Rpp + Rp / r;
  }
  return f;
}

TractionDisplacement traction_coeffs(const IsotropicMedium& m, double omega, int n, double r,
                                     const std::array<cplx, 4>& coeffs) {
  if (r == 0.0 && (coeffs[1] != 0.0 || coeffs[3] != 0.0))
    throw SingularityError("Hankel potentials are singular at r = 0");
  PolarFields sum;
  const Wave waves[4] = {Wave::Pressure, Wave::Pressure, Wave::Shear, Wave::Shear};
  const RadialKind kinds[4] = {RadialKind::J, RadialKind::H, RadialKind::J, RadialKind::H};
  for (int b = 0; b < 4; ++b) {
    if (coeffs[b] == 0.0) continue;
    sum += potential_fields(m, omega, n, r, waves[b], kinds[b]) * coeffs[b];
  }
  return {sum.sigma_rr(m.lambda, m.mu), sum.sigma_rt(m.mu), sum.u_r, sum.u_t};
}

Eigen::Matrix2d traction_normal_matrix(double lambda, double mu, const Eigen::Vector2d& nu) {
  const double lm = lambda + mu;
  Eigen::Matrix2d a;
  a << mu + lm * nu(0) * nu(0), lm * nu(0) * nu(1), lm * nu(0) * nu(1), mu + lm * nu(1) * nu(1);
  return a;
}

Eigen::Matrix2d traction_tangential_matrix(double lambda, double mu, const Eigen::Vector2d& nu) {
  const double lm = lambda + mu;
  Eigen::Matrix2d b;
  b << -lm * nu(0) * nu(1), lambda * nu(0) * nu(0) - mu * nu(1) * nu(1), -lambda * nu(1) * nu(1) + mu * nu(0) * nu(0),
      lm * nu(0) * nu(1);
  return b;
}

Eigen::Vector2cd traction_from_gradient(cplx lambda, cplx mu, const Eigen::Vector2d& nu, const Eigen::Matrix2cd& grad) {
  const Eigen::Vector2d tau(-nu(1), nu(0));
  const Eigen::Vector2cd dnu = grad * nu.cast<cplx>();
  const cplx div = grad(0, 0) + grad(1, 1);
  const cplx curl = grad(0, 1) - grad(1, 0);  // d_2 u_1 - d_1 u_2
  return 2.0 * mu * dnu + lambda * div * nu.cast<cplx>() + mu * curl * tau.cast<cplx>();
}

}  // namespace elastocloak
