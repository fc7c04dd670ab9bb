#include <cmath>

#include "elastocloak/kernels.hpp"

namespace elastocloak {

namespace {

Eigen::Vector2cd to_cartesian(const PolarFields& f, double theta, int n) {
  const cplx phase = std::exp(cplx(0.0, n * theta));
  const Eigen::Vector2d er(std::cos(theta), std::sin(theta)), et(-std::sin(theta), std::cos(theta));
  return phase * (f.u_r * er.cast<cplx>() + f.u_t * et.cast<cplx>());
}

}  // namespace

PolarFields CavityField::mode_fields(int n, double r, Wave wave) const {
  if (r < h_ * (1.0 - 1e-12)) throw DomainError("cavity field lives on r >= h");
  const auto it = coeffs_.find(n);
  if (it == coeffs_.end()) return {};
  const cplx c = wave == Wave::Pressure ? it->second(0) : it->second(1);
  return potential_fields(medium_, omega_, n, r, wave, RadialKind::H, h_) * c;
}

PolarFields CavityField::mode_fields(int n, double r) const {
  PolarFields f = mode_fields(n, r, Wave::Pressure);
  f += mode_fields(n, r, Wave::Shear);
  return f;
}

Eigen::Vector2cd CavityField::displacement(const Eigen::Vector2d& x, Wave wave) const {
  const double r = x.norm(), theta = std::atan2(x(1), x(0));
  Eigen::Vector2cd u = Eigen::Vector2cd::Zero();
  for (const auto& [n, c] : coeffs_) u += to_cartesian(mode_fields(n, r, wave), theta, n);
  return u;
}

Eigen::Vector2cd CavityField::displacement(const Eigen::Vector2d& x) const {
  return displacement(x, Wave::Pressure) + displacement(x, Wave::Shear);
}

double CavityField::l2_norm_on_circle(double r) const {
  double sum = 0.0;
  for (const auto& [n, c] : coeffs_) {
    const PolarFields f = mode_fields(n, r);
    sum += std::norm(f.u_r) + std::norm(f.u_t);
  }
  return std::sqrt(2.0 * M_PI * r * sum);
}

Eigen::Vector2cd CavityField::radiation_defect(const Eigen::Vector2d& x, Wave wave) const {
  const Wavenumbers kw = wavenumbers(medium_, omega_);
  const cplx ik = cplx(0.0, 1.0) * (wave == Wave::Pressure ? kw.kp : kw.ks);
  const double r = x.norm(), theta = std::atan2(x(1), x(0));
  Eigen::Vector2cd out = Eigen::Vector2cd::Zero();
  for (const auto& [n, c] : coeffs_) {
    const PolarFields f = mode_fields(n, r, wave);
    PolarFields d;
    d.u_r = f.dr_ur - ik * f.u_r;
    d.u_t = f.dr_ut - ik * f.u_t;
    out += to_cartesian(d, theta, n);
  }
  return out;
}

CavityField solve_exterior_cavity(double h, const std::map<int, Eigen::Vector2cd>& traction, double omega,
                                  const IsotropicMedium& m) {
  if (!(h > 0.0)) throw DomainError("cavity radius must be positive");
  if (!(omega > 0.0)) throw DomainError("exterior problem needs omega > 0");
  CavityField field;
  field.h_ = h;
  field.omega_ = omega;
  field.medium_ = m;
  for (const auto& [n, data] : traction) {
    const PolarFields p = potential_fields(m, omega, n, h, Wave::Pressure, RadialKind::H, h);
    const PolarFields s = potential_fields(m, omega, n, h, Wave::Shear, RadialKind::H, h);
    Eigen::Matrix2cd a;
    a << p.sigma_rr(m.lambda, m.mu), s.sigma_rr(m.lambda, m.mu), p.sigma_rt(m.mu), s.sigma_rt(m.mu);
    const Eigen::FullPivLU<Eigen::Matrix2cd> lu(a);
    if (!lu.isInvertible()) throw SingularityError("exterior traction system is singular at mode " + std::to_string(n));
    field.coeffs_[n] = lu.solve(data);
  }
  return field;
}

}  // namespace elastocloak
