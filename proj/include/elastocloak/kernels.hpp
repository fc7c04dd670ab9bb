#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "elastocloak/errors.hpp"
#include "elastocloak/mode_solver.hpp"
#include "elastocloak/tensor.hpp"

namespace elastocloak {

// Pi = p1(r) I + p2(r) rhat rhat^T with rhat = (x - y) / r; derivatives are d/dr.
struct RadialProfile {
  cplx p1{0.0}, p2{0.0}, dp1{0.0}, dp2{0.0};
};

// 2D profile split as p = a ln r + b with a, b smooth in r (both entire in r^2).
struct LogSplitProfile {
  cplx a1{0.0}, a2{0.0}, b1{0.0}, b2{0.0};
  cplx da1{0.0}, da2{0.0};
};

enum class GreenMethod { Auto, Closed, Series };

// omega == 0 selects the static kernel.
RadialProfile green_profile(double r, double omega, const IsotropicMedium& m, int dim,
                            GreenMethod method = GreenMethod::Auto);
LogSplitProfile green_log_split_2d(double r, double omega, const IsotropicMedium& m);

// Time-harmonic fundamental solution (x != y, omega > 0).
Eigen::MatrixXcd green_omega(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double omega,
                             const IsotropicMedium& m, GreenMethod method = GreenMethod::Auto);
Eigen::MatrixXcd green_static(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const IsotropicMedium& m);
// 3D power series in the separation truncated after `terms` terms.
Eigen::MatrixXcd green_omega_series_3d(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double omega,
                                       const IsotropicMedium& m, int terms = 40);

// Limit of (Pi^omega - Pi^0) at coincidence in 2D (a multiple of the identity).
cplx eta_2d(double omega, const IsotropicMedium& m);
// Pi^omega - Pi^0 - eta I.
Eigen::Matrix2cd asymptotic_gap_2d(const Eigen::Vector2d& x, const Eigen::Vector2d& y, double omega,
                                   const IsotropicMedium& m);
Eigen::Matrix2cd asymptotic_gap_2d(const Eigen::Vector2d& x, const Eigen::Vector2d& y, double omega,
                                   const IsotropicMedium& m, cplx eta);

// Traction at y (unit normal nu at y) of the field y -> Pi(x, y) e_l, stored as Xi(l, m).
// The double-layer potential is DL phi(x) = int Xi(x, y) phi(y) ds_y. omega == 0 is static.
Eigen::Matrix2cd traction_kernel_2d(const Eigen::Vector2d& x, const Eigen::Vector2d& y, const Eigen::Vector2d& nu,
                                    double omega, const IsotropicMedium& m);

struct CircleQuadrature {
  double radius = 1.0;
  int n_points = 0;
  std::vector<double> nodes;    // angles 2 pi j / n_points
  std::vector<double> weights;  // arc-length weights
  std::vector<Eigen::Vector2d> points, normals;
};
CircleQuadrature circle_quadrature(double radius, int n_points);

// Nystrom matrices acting on densities stored as (phi_1, phi_2) per node.
struct LayerOperators {
  Eigen::MatrixXcd S, K;
};
LayerOperators layer_operators(const CircleQuadrature& q, double omega, const IsotropicMedium& m);

Eigen::Vector2cd single_layer_potential(const CircleQuadrature& q, const Eigen::VectorXcd& phi,
                                        const Eigen::Vector2d& x, double omega, const IsotropicMedium& m);
Eigen::Vector2cd double_layer_potential(const CircleQuadrature& q, const Eigen::VectorXcd& phi,
                                        const Eigen::Vector2d& x, double omega, const IsotropicMedium& m);

// Row-major complex matrix as raw little-endian doubles (re, im) after a one-line JSON header.
void export_matrix(const std::string& path, const Eigen::MatrixXcd& a, double radius, double omega);
Eigen::MatrixXcd import_matrix(const std::string& path, nlohmann::json* header = nullptr);

// Outgoing solution outside the disk r < h with prescribed traction sigma . rhat on r = h.
class CavityField {
 public:
  Eigen::Vector2cd displacement(const Eigen::Vector2d& x) const;
  // Pressure / shear parts.
  Eigen::Vector2cd displacement(const Eigen::Vector2d& x, Wave wave) const;
  // Polar Fourier coefficients of one mode at radius r.
  PolarFields mode_fields(int n, double r) const;
  PolarFields mode_fields(int n, double r, Wave wave) const;
  // L2 norm of u over the circle of radius r (Parseval).
  double l2_norm_on_circle(double r) const;
  // (d/dr - i k) applied to the pressure (k = k_p) or shear (k = k_s) part at x.
  Eigen::Vector2cd radiation_defect(const Eigen::Vector2d& x, Wave wave) const;
  double radius() const { return h_; }
  // Coefficients (pressure, shear) of the normalized Hankel potentials per mode.
  const std::map<int, Eigen::Vector2cd>& coefficients() const { return coeffs_; }

 private:
  friend CavityField solve_exterior_cavity(double, const std::map<int, Eigen::Vector2cd>&, double,
                                           const IsotropicMedium&);
  double h_ = 0.0, omega_ = 0.0;
  IsotropicMedium medium_;
  std::map<int, Eigen::Vector2cd> coeffs_;
};

// traction: mode n -> (sigma_rr, sigma_rt) Fourier coefficients on r = h.
CavityField solve_exterior_cavity(double h, const std::map<int, Eigen::Vector2cd>& traction, double omega,
                                  const IsotropicMedium& m);

}  // namespace elastocloak
