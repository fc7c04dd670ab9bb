#include <cmath>

#include "elastocloak/cloak_design.hpp"
#include "elastocloak/errors.hpp"

namespace elastocloak {

namespace {

void require_medium(const IsotropicMedium& m, const char* what) {
  if (std::abs(m.mu) == 0.0 || std::abs(m.lambda + 2.0 * m.mu) == 0.0)
    throw DomainError(std::string(what) + ": mu and lambda + 2 mu must be nonzero");
  if (m.rho.imag() < 0.0) throw DomainError(std::string(what) + ": density must have Im rho >= 0");
}

IsotropicMedium scaled(const IsotropicMedium& m, double stiffness_factor, cplx density) {
  return {m.lambda * stiffness_factor, m.mu * stiffness_factor, density};
}

}  // namespace

PolarEntries polar_entries(const StiffnessTensor& p) {
  return {p(0, 0, 0, 0), p(1, 1, 1, 1), p(0, 0, 1, 1), p(1, 1, 0, 0),
          p(0, 1, 0, 1), p(1, 0, 1, 0), p(0, 1, 1, 0), p(1, 0, 0, 1)};
}

IdealCloakSample ideal_cloak_polar(const IsotropicMedium& medium, double r, int dim) {
  if (!(r > 1.0)) throw SingularityError("ideal cloak is singular for r <= 1");
  if (r > 2.0) throw DomainError("ideal cloak lives on 1 < r <= 2");
  IdealCloakSample out;
  out.radius = r;
  if (dim == 2) {
    // Radial stretch 1/2, tangential stretch r / (2 (r - 1)).
    const double ratio = r / (r - 1.0);
    const cplx p_mod = medium.lambda + 2.0 * medium.mu;
    StiffnessTensor t(2);
    t(0, 0, 0, 0) = p_mod / ratio;
    t(1, 1, 1, 1) = p_mod * ratio;
    t(0, 0, 1, 1) = t(1, 1, 0, 0) = medium.lambda;
    t(0, 1, 1, 0) = t(1, 0, 0, 1) = medium.mu;
    t(0, 1, 0, 1) = medium.mu * ratio;
    t(1, 0, 1, 0) = medium.mu / ratio;
    t.set_flags(true, false);
    out.polar = t;
    out.density = medium.rho * 4.0 * (r - 1.0) / r;
    return out;
  }
  if (dim != 3) throw DomainError("dimension must be 2 or 3");
  const RadialMap f = blowup_F(3);
  Eigen::VectorXd y = Eigen::VectorXd::Constant(3, r / std::sqrt(3.0));
  const JacobianData jac = jacobian(f, y, JacobianFrame::Image);
  out.polar = change_frame(pushforward_stiffness(iso_stiffness(medium, 3), jac), polar_frame(y));
  out.density = pushforward_density(medium.rho, jac);
  return out;
}

void NearCloakParams::validate() const {
  if (!(h > 0.0 && h < 0.5)) throw DomainError("h must lie in (0, 1/2)");
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0)) throw DomainError("alpha, beta, gamma must be positive");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("delta must be non-negative");
}

double NearCloakParams::lossy_scale() const { return gamma * std::pow(h, 2.0 + delta); }

PhysicalCloakConfig::Region PhysicalCloakConfig::region_at(const Eigen::VectorXd& y) const {
  const double r = y.norm();
  if (r > outer_radius * (1.0 + 1e-12)) throw DomainError("point outside the cloak domain");
  if (r >= 1.0) return Region::CloakingLayer;
  if (r >= 0.5) return Region::LossyLayer;
  return Region::Content;
}

StiffnessTensor PhysicalCloakConfig::stiffness_at(const Eigen::VectorXd& y) const {
  switch (region_at(y)) {
    case Region::CloakingLayer:
      return pushforward_stiffness(iso_stiffness(background, dim), regularized_Fh(params.h, dim), y);
    case Region::LossyLayer: {
      // x -> x/h scales C by h^{N-2}.
      const double f = params.lossy_scale() * std::pow(params.h, dim - 2);
      return iso_stiffness(scaled(background, f, 0.0), dim);
    }
    case Region::Content:
      break;
  }
  return iso_stiffness(content, dim);
}

cplx PhysicalCloakConfig::density_at(const Eigen::VectorXd& y) const {
  switch (region_at(y)) {
    case Region::CloakingLayer:
      return pushforward_density(background.rho, regularized_Fh(params.h, dim), y);
    case Region::LossyLayer:
      return cplx(params.alpha, params.beta) * std::pow(params.h, dim);
    case Region::Content:
      break;
  }
  return content.rho;
}

NearCloak build_near_cloak(const NearCloakParams& params, const IsotropicMedium& content,
                           const IsotropicMedium& background, bool content_is_virtual, int dim) {
  params.validate();
  require_medium(content, "content");
  require_medium(background, "background");
  if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3");
  const double h = params.h;

  IsotropicMedium physical_content = content;
  IsotropicMedium virtual_content = content;
  // Pull-back through y = x/h: C -> h^{2-N} C, rho -> rho h^{-N}.
  const double c_factor = std::pow(h, 2 - dim);
  const double rho_factor = std::pow(h, -dim);
  if (content_is_virtual) {
    physical_content = scaled(content, 1.0 / c_factor, content.rho / rho_factor);
  } else {
    virtual_content = scaled(content, c_factor, content.rho * rho_factor);
  }

  NearCloak out;
  out.physical.dim = dim;
  out.physical.params = params;
  out.physical.background = background;
  out.physical.content = physical_content;

  LayeredDiskConfig& v = out.virtual_config;
  v.layers.push_back({2.0, background});
  v.layers.push_back({h, scaled(background, params.lossy_scale(), cplx(params.alpha, params.beta))});
  v.layers.push_back({0.5 * h, virtual_content});
  v.inner = InnerCondition::Core;
  v.validate();
  return out;
}

LayeredDiskConfig build_lining_config(double h, const IsotropicMedium& background) {
  if (!(h > 0.0 && h < 0.5)) throw DomainError("h must lie in (0, 1/2)");
  LayeredDiskConfig c;
  c.layers.push_back({2.0, background});
  c.inner = InnerCondition::TractionFree;
  c.inner_radius = h;
  c.validate();
  return c;
}

SingularityProfile singularity_scan(const IsotropicMedium& medium, const std::vector<double>& radii,
                                    const RadialMap& map) {
  SingularityProfile out;
  const StiffnessTensor base = iso_stiffness(medium, map.dim());
  for (double r : radii) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(map.dim());
    y(0) = r;
    const JacobianData jac = jacobian(map, y, JacobianFrame::Image);
    const StiffnessTensor c = pushforward_stiffness(base, jac);
    out.radii.push_back(r);
    out.min_ellipticity.push_back(legendre_constant(c));
    out.density.push_back(pushforward_density(medium.rho, jac));
    out.max_tensor_entry.push_back(c.max_abs());
  }
  return out;
}

SingularityProfile singularity_scan(const IsotropicMedium& medium, const std::vector<double>& radii) {
  for (double r : radii)
    if (!(r > 1.0 && r <= 2.0)) throw DomainError("ideal-cloak scan radii must lie in (1, 2]");
  return singularity_scan(medium, radii, blowup_F(2));
}

}  // namespace elastocloak
