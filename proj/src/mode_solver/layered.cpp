#include <cmath>

#include "elastocloak/errors.hpp"
#include "elastocloak/layered.hpp"

namespace elastocloak {

namespace {

void require_layer_medium(const IsotropicMedium& m, const char* what) {
  if (std::abs(m.mu) == 0.0 || std::abs(m.lambda + 2.0 * m.mu) == 0.0)
    throw DomainError(std::string(what) + ": mu and lambda + 2 mu must be nonzero");
  if (m.rho.imag() < 0.0) throw DomainError(std::string(what) + ": density must have Im rho >= 0");
}

}  // namespace

void LayeredDiskConfig::validate() const {
  if (layers.empty()) throw DomainError("layered disk needs at least one layer");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (!(layers[i].outer_radius > 0.0)) throw DomainError("layer radii must be positive");
    if (i > 0 && !(layers[i].outer_radius < layers[i - 1].outer_radius))
      throw DomainError("layer radii must decrease strictly from the outside in");
    require_layer_medium(layers[i].medium, "layer medium");
  }
  if (inner == InnerCondition::TractionFree &&
      !(inner_radius > 0.0 && inner_radius < layers.back().outer_radius))
    throw DomainError("traction-free inner radius must lie inside the innermost layer");
}

LayeredDiskConfig uniform_disk(const IsotropicMedium& medium, double radius) {
  LayeredDiskConfig c;
  c.layers.push_back({radius, medium});
  return c;
}

}  // namespace elastocloak
