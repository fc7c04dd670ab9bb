#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "elastocloak/geo_maps.hpp"

namespace elastocloak {

namespace {

void require_dim(int dim) {
  if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3, got " + std::to_string(dim));
}

constexpr double kRadiusSlack = 1e-12;

}  // namespace

RadialMap::RadialMap(Kind kind, int dim, double r_min, double r_max, Profile profile, std::vector<double> joints,
                     bool singular_at_origin)
    : kind_(kind),
      dim_(dim),
      r_min_(r_min),
      r_max_(r_max),
      profile_(std::move(profile)),
      joints_(std::move(joints)),
      singular_at_origin_(singular_at_origin) {
  require_dim(dim);
  if (!(r_max > r_min) || r_min < 0.0) throw DomainError("radial map needs 0 <= r_min < r_max");
  if (!profile_.g || !profile_.g_prime) throw DomainError("radial map needs g and g'");
  std::sort(joints_.begin(), joints_.end());
  try {
    range_min_ = profile_.g(r_min_);
  } catch (const SingularityError&) {
    range_min_ = profile_.g(std::nextafter(r_min_, r_max_));
  }
  range_max_ = profile_.g(r_max_);
}

void RadialMap::check_radius(double r) const {
  if (!std::isfinite(r)) throw DomainError("non-finite radius");
  const double slack = kRadiusSlack * std::max(1.0, r_max_);
  if (r < r_min_ - slack || r > r_max_ + slack)
    throw DomainError("radius " + std::to_string(r) + " outside map domain [" + std::to_string(r_min_) + ", " +
                      std::to_string(r_max_) + "]");
  if (r == 0.0 && singular_at_origin_) throw SingularityError("map blows up the origin");
}

double RadialMap::g(double r) const {
  check_radius(r);
  return profile_.g(r);
}

double RadialMap::g_prime(double r) const {
  check_radius(r);
  return profile_.g_prime(r);
}

double RadialMap::g_inverse(double s) const {
  if (profile_.g_inverse) return profile_.g_inverse(s);
  // Monotone bracket search on the domain.
  double lo = singular_at_origin_ ? std::max(r_min_, 1e-300) : r_min_;
  double hi = r_max_;
  const double glo = profile_.g(lo), ghi = profile_.g(hi);
  const double tol = 1e-13 * std::max(1.0, std::abs(ghi));
  if (s < glo - tol || s > ghi + tol) throw DomainError("value outside the map's range");
  if (std::abs(s - glo) <= tol) return lo;
  if (std::abs(s - ghi) <= tol) return hi;
  std::uintmax_t iters = 200;
  auto res = boost::math::tools::toms748_solve([&](double r) { return profile_.g(r) - s; }, lo, hi, glo - s, ghi - s,
                                               boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (res.first + res.second);
}

Eigen::VectorXd RadialMap::apply(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw DomainError("point dimension does not match map");
  const double r = x.norm();
  const double s = g(r);
  if (r == 0.0) return Eigen::VectorXd::Zero(dim_) * s;
  return x * (s / r);
}

Eigen::VectorXd RadialMap::apply_inverse(const Eigen::VectorXd& y) const {
  if (y.size() != dim_) throw DomainError("point dimension does not match map");
  const double s = y.norm();
  const double r = g_inverse(s);
  if (s == 0.0) return Eigen::VectorXd::Zero(dim_);
  return y * (r / s);
}

RadialMap identity_map(int dim, double r_max) {
  RadialMap::Profile p{[](double r) { return r; }, [](double) { return 1.0; }, [](double s) { return s; }};
  RadialMap m(RadialMap::Kind::Identity, dim, 0.0, r_max, p);
  m.description = {{"kind", "identity"}, {"dim", dim}, {"params", {{"r_max", r_max}}}};
  return m;
}

RadialMap blowup_F(int dim) {
  RadialMap::Profile p{[](double r) { return 1.0 + 0.5 * r; }, [](double) { return 0.5; },
                       [](double s) { return 2.0 * (s - 1.0); }};
  RadialMap m(RadialMap::Kind::Blowup, dim, 0.0, 2.0, p, {}, true);
  m.description = {{"kind", "blowup"}, {"dim", dim}, {"params", nlohmann::json::object()}};
  return m;
}

RadialMap regularized_Fh(double h, int dim) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("regularization parameter h must lie in (0, 1)");
  const double a = (2.0 - 2.0 * h) / (2.0 - h);
  const double b = 1.0 / (2.0 - h);
  RadialMap::Profile p{
      [=](double r) { return r < h ? r / h : a + b * r; },
      [=](double r) { return r < h ? 1.0 / h : b; },
      [=](double s) { return s < 1.0 ? s * h : (s - a) / b; },
  };
  RadialMap m(RadialMap::Kind::Regularized, dim, 0.0, 2.0, p, {h});
  m.description = {{"kind", "regularized"}, {"dim", dim}, {"params", {{"h", h}}}};
  return m;
}

RadialMap compose(const RadialMap& first, const RadialMap& second) {
  if (first.dim() != second.dim()) throw DomainError("composed maps differ in dimension");
  RadialMap::Profile p{
      [=](double r) { return second.g(first.g(r)); },
      [=](double r) { return second.g_prime(first.g(r)) * first.g_prime(r); },
      [=](double s) { return first.g_inverse(second.g_inverse(s)); },
  };
  std::vector<double> joints = first.joints();
  for (double j : second.joints()) {
    const double pre = first.g_inverse(j);
    if (pre > first.r_min() && pre < first.r_max()) joints.push_back(pre);
  }
  RadialMap m(RadialMap::Kind::Composite, first.dim(), first.r_min(), first.r_max(), p, joints,
              first.singular_at_origin() || second.singular_at_origin());
  m.description = {{"kind", "composite"}, {"dim", first.dim()}, {"parts", {first.description, second.description}}};
  return m;
}

RadialMap inverse(const RadialMap& map) {
  RadialMap::Profile p{
      [=](double s) { return map.g_inverse(s); },
      [=](double s) { return 1.0 / map.g_prime(map.g_inverse(s)); },
      [=](double r) { return map.g(r); },
  };
  std::vector<double> joints;
  for (double j : map.joints()) joints.push_back(map.g(j));
  RadialMap m(RadialMap::Kind::Inverse, map.dim(), map.range_min(), map.range_max(), p, joints);
  m.description = {{"kind", "inverse"}, {"dim", map.dim()}, {"of", map.description}};
  return m;
}

RadialMap custom_map(int dim, double r_max, RadialMap::Profile profile) {
  RadialMap m(RadialMap::Kind::Custom, dim, 0.0, r_max, std::move(profile));
  m.description = {{"kind", "custom"}, {"dim", dim}};
  return m;
}

}  // namespace elastocloak
