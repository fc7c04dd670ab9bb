#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastocloak/errors.hpp"
#include "elastocloak/tensor.hpp"

namespace elastocloak {

// Radial diffeomorphism x -> g(|x|) x/|x| on the ball of radius r_max.
class RadialMap {
 public:
  enum class Kind { Identity, Blowup, Regularized, Composite, Inverse, Custom };

  struct Profile {
    std::function<double(double)> g;
    std::function<double(double)> g_prime;
    std::function<double(double)> g_inverse;  // may be empty; bisection is used then
  };

  RadialMap(Kind kind, int dim, double r_min, double r_max, Profile profile, std::vector<double> joints = {},
            bool singular_at_origin = false);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  const std::vector<double>& joints() const { return joints_; }
  bool singular_at_origin() const { return singular_at_origin_; }
  // g over the closed domain, including the one-sided limit at a blown-up origin.
  double range_min() const { return range_min_; }
  double range_max() const { return range_max_; }

  double g(double r) const;
  double g_prime(double r) const;
  double g_inverse(double s) const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& y) const;

  // JSON description; set by the factories.
  nlohmann::json description;

 private:
  void check_radius(double r) const;

  Kind kind_;
  int dim_;
  double r_min_, r_max_;
  Profile profile_;
  std::vector<double> joints_;
  bool singular_at_origin_;
  double range_min_ = 0.0, range_max_ = 0.0;
};

RadialMap identity_map(int dim, double r_max = 2.0);
// r -> 1 + r/2 on (0, 2].
RadialMap blowup_F(int dim);
// r -> (2-2h)/(2-h) + r/(2-h) on [h, 2], r -> r/h on [0, h).
RadialMap regularized_Fh(double h, int dim);
// Composite `second` after `first`.
RadialMap compose(const RadialMap& first, const RadialMap& second);
RadialMap inverse(const RadialMap& map);
// Smooth user profile (tests and composition checks).
RadialMap custom_map(int dim, double r_max, RadialMap::Profile profile);

nlohmann::json map_to_json(const RadialMap& map);
RadialMap map_from_json(const nlohmann::json& j);

struct JacobianData {
  Eigen::MatrixXd M;
  double detM = 0.0;
  Eigen::VectorXd at_point;  // source point x where dF/dx was taken
};

enum class JacobianFrame {
  Source,  // point is x; returns dF/dx at x
  Image,   // point is y = F(x); returns dF/dx at x = F^{-1}(y) (the y-frame form)
};

class JointError : public Error {
 public:
  JointError(const std::string& what, JacobianData inner, JacobianData outer)
      : Error(ErrorKind::Joint, what), inner_side(std::move(inner)), outer_side(std::move(outer)) {}
  JacobianData inner_side;
  JacobianData outer_side;
};

JacobianData jacobian(const RadialMap& map, const Eigen::VectorXd& point, JacobianFrame frame = JacobianFrame::Source);

// C~_iqkp = (1/det M) sum_{l,j} C_ijkl M_pl M_qj, flagged major-symmetric only.
StiffnessTensor pushforward_stiffness(const StiffnessTensor& c, const JacobianData& jac);
// Push-forward evaluated at image point y.
StiffnessTensor pushforward_stiffness(const StiffnessTensor& c, const RadialMap& map, const Eigen::VectorXd& y);
cplx pushforward_density(cplx rho, const JacobianData& jac);
cplx pushforward_density(cplx rho, const RadialMap& map, const Eigen::VectorXd& y);

// Max entrywise gap between (B o A)_* C and B_*(A_* C) at image point q.
double compose_pushforward_check(const StiffnessTensor& c, const RadialMap& a, const RadialMap& b,
                                 const Eigen::VectorXd& q);

// Orthonormal polar (2D) or spherical (3D) frame at x: columns r-hat, theta-hat[, phi-hat].
Eigen::MatrixXd polar_frame(const Eigen::VectorXd& x);

}  // namespace elastocloak
