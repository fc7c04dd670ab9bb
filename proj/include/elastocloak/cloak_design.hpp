#pragma once

#include <Eigen/Dense>
#include <vector>

#include "elastocloak/geo_maps.hpp"
#include "elastocloak/layered.hpp"
#include "elastocloak/tensor.hpp"

namespace elastocloak {

struct IdealCloakSample {
  double radius = 0.0;
  StiffnessTensor polar{2};  // components in the (r, theta[, phi]) frame
  cplx density{0.0};
};

// Ideal singular cloak built from blowup_F at image radius r in (1, 2]. In 2D the polar
// entries come from the closed form; in 3D they are computed by numeric push-forward.
IdealCloakSample ideal_cloak_polar(const IsotropicMedium& medium, double r, int dim = 2);

// Closed-form 2D polar entries, in push-forward index order C~_{iqkp}.
struct PolarEntries {
  cplx rrrr, tttt, rrtt, ttrr, rtrt, trtr, rttr, trrt;
};
PolarEntries polar_entries(const StiffnessTensor& polar);

struct NearCloakParams {
  double h = 0.1;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = 0.0;
  void validate() const;
  // gamma h^{2 + delta}
  double lossy_scale() const;
};

// Media of the regularized cloak in physical space on B_2.
struct PhysicalCloakConfig {
  double outer_radius = 2.0;
  int dim = 2;
  NearCloakParams params;
  IsotropicMedium background;
  IsotropicMedium content;  // occupies |y| < 1/2

  enum class Region { CloakingLayer, LossyLayer, Content };
  Region region_at(const Eigen::VectorXd& y) const;
  // Cartesian stiffness and density at y (|y| <= 2).
  StiffnessTensor stiffness_at(const Eigen::VectorXd& y) const;
  cplx density_at(const Eigen::VectorXd& y) const;
};

struct NearCloak {
  PhysicalCloakConfig physical;
  LayeredDiskConfig virtual_config;  // background, lossy layer, content (outside in)
};

// content_is_virtual: true when `content` is already the medium of the virtual disk r < h/2;
// otherwise it is the physical content and is pulled back through x -> x/h.
NearCloak build_near_cloak(const NearCloakParams& params, const IsotropicMedium& content,
                           const IsotropicMedium& background, bool content_is_virtual = false, int dim = 2);

// Background annulus h < r < 2 with a traction-free inner boundary.
LayeredDiskConfig build_lining_config(double h, const IsotropicMedium& background);

struct SingularityProfile {
  std::vector<double> radii;
  std::vector<double> min_ellipticity;
  std::vector<cplx> density;
  std::vector<double> max_tensor_entry;
};

// Push-forward of iso(medium) under `map` at image radii; the ellipticity column is the exact
// Legendre constant of each sample.
SingularityProfile singularity_scan(const IsotropicMedium& medium, const std::vector<double>& radii,
                                    const RadialMap& map);
SingularityProfile singularity_scan(const IsotropicMedium& medium, const std::vector<double>& radii);

}  // namespace elastocloak
