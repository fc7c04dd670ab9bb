#pragma once

#include <vector>

#include "elastocloak/tensor.hpp"

namespace elastocloak {

struct DiskLayer {
  double outer_radius = 0.0;
  IsotropicMedium medium;
};

enum class InnerCondition {
  Core,          // innermost layer is a full disk (regular at the origin)
  TractionFree,  // innermost layer is an annulus with zero traction on r = inner_radius
};

// Concentric isotropic layers listed from the outside in.
struct LayeredDiskConfig {
  std::vector<DiskLayer> layers;
  InnerCondition inner = InnerCondition::Core;
  double inner_radius = 0.0;  // used only with TractionFree

  double outer_radius() const { return layers.empty() ? 0.0 : layers.front().outer_radius; }
  // Inner radius of layer `i` (0 for the core).
  double layer_inner_radius(std::size_t i) const {
    if (i + 1 < layers.size()) return layers[i + 1].outer_radius;
    return inner == InnerCondition::Core ? 0.0 : inner_radius;
  }
  // Throws DomainError unless radii decrease strictly and each medium has mu != 0 and
  // lambda + 2 mu != 0 with Im rho >= 0.
  void validate() const;
};

LayeredDiskConfig uniform_disk(const IsotropicMedium& medium, double radius = 2.0);

}  // namespace elastocloak
