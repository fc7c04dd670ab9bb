#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include <json.hpp>

#include "elastocloak/errors.hpp"
#include "elastocloak/layered.hpp"
#include "elastocloak/tensor.hpp"

namespace elastocloak {

struct Wavenumbers {
  cplx kp, ks;
};
// k = omega sqrt(rho / modulus), principal branch (Im k >= 0 for Im rho >= 0).
Wavenumbers wavenumbers(const IsotropicMedium& m, double omega);

enum class Wave { Pressure, Shear };
enum class RadialKind { J, H };

// Fourier coefficients (mode e^{i n theta}) of the displacement and of the strain pieces
// the traction needs, for one potential of one mode.
struct PolarFields {
  cplx u_r{0.0}, u_t{0.0};
  cplx div{0.0};           // div u
  cplx dr_ur{0.0};         // d u_r / dr
  cplx dr_ut{0.0};         // d u_theta / dr
  cplx two_eps_rt{0.0};    // 2 eps_{r theta}
  cplx sigma_rr(cplx lambda, cplx mu) const { return lambda * div + 2.0 * mu * dr_ur; }
  cplx sigma_rt(cplx mu) const { return mu * two_eps_rt; }
  PolarFields& operator+=(const PolarFields& o);
  PolarFields operator*(cplx s) const;
};

// Pressure potential phi(r) e^{i n theta} (u = grad phi) or shear potential psi(r) e^{i n theta}
// (u = curl psi e_z) with radial function Z_{|n|}(k r) / N. N = 1 for norm_radius == 0, else
// N = max(|Z|, |Z'|) at k * norm_radius (overflow-safe through scaled evaluation).
PolarFields potential_fields(const IsotropicMedium& m, double omega, int n, double r, Wave wave, RadialKind kind,
                             double norm_radius = 0.0);

// Coefficients (a, b, c, d) of a J_p + b H_p + c J_s + d H_s (unnormalized radial functions).
struct TractionDisplacement {
  cplx sigma_rr, sigma_rt, u_r, u_t;
};
TractionDisplacement traction_coeffs(const IsotropicMedium& m, double omega, int n, double r,
                                     const std::array<cplx, 4>& coeffs);

// Solution of one Fourier mode in a layered disk.
class ModeSolution {
 public:
  int mode() const { return n_; }
  // Field of the layer containing r (0 < r <= outer radius, r >= inner radius if traction-free).
  PolarFields fields_at(double r) const;
  // Same field, restricted to one wave family.
  PolarFields fields_at(double r, Wave wave) const;
  std::size_t layer_index(double r) const;
  const LayeredDiskConfig& config() const { return config_; }
  // Basis coefficients of layer i in the order (J_p, H_p, J_s, H_s); H entries are 0 in a core.
  const std::array<cplx, 4>& layer_coefficients(std::size_t i) const { return coeffs_[i]; }

 private:
  friend class ModeSystem;
  LayeredDiskConfig config_;
  double omega_ = 0.0;
  int n_ = 0;
  std::vector<std::array<cplx, 4>> coeffs_;  // normalized-basis coefficients
};

// Assembled and equilibrated linear system for one mode.
class ModeSystem {
 public:
  ModeSystem(const LayeredDiskConfig& config, double omega, int n);
  // 2-norm condition number of the equilibrated matrix.
  double condition() const { return cond_; }
  // Solve for outer traction (sigma_rr, sigma_rt) at r = outer radius.
  ModeSolution solve(const Eigen::Vector2cd& traction) const;
  // Displacement (u_r, u_t) at the outer radius for unit traction columns.
  Eigen::Matrix2cd ntd_block() const;

 private:
  LayeredDiskConfig config_;
  double omega_;
  int n_;
  Eigen::MatrixXcd matrix_;
  Eigen::VectorXd row_scale_, col_scale_;
  Eigen::MatrixXcd scaled_;
  double cond_ = 0.0;
};

inline constexpr double kNearResonanceCondition = 1e14;

// Condition number of mode n's system; never throws on conditioning.
double mode_condition(const LayeredDiskConfig& config, double omega, int n);

struct NtDOperator {
  double omega = 0.0;
  int n_max = 0;
  std::vector<Eigen::Matrix2cd> blocks;  // modes 0..n_max
  // Block of a signed mode, via reflection symmetry: Lambda_{-n} = D Lambda_n D, D = diag(1, -1).
  Eigen::Matrix2cd block(int n) const;
};

// Throws NearResonanceError(mode) if a mode's condition number exceeds 1e14.
NtDOperator assemble_ntd(const LayeredDiskConfig& config, double omega, int n_max);
double ntd_distance(const NtDOperator& a, const NtDOperator& b);
// Per-mode weighted distances sqrt(1 + n^2) sigma_max(A_n - B_n).
std::vector<double> ntd_mode_distances(const NtDOperator& a, const NtDOperator& b);

nlohmann::json ntd_to_json(const NtDOperator& op);
NtDOperator ntd_from_json(const nlohmann::json& j);

// Cartesian displacement of a field given per signed mode (pairs (n, solution)).
Eigen::Vector2cd cartesian_displacement(const std::vector<ModeSolution>& modes, const Eigen::Vector2d& x);

// Pressure / shear split of a multi-mode field: v = v_p + v_s with v_p from the
// pressure potentials and v_s from the shear potentials.
struct PSParts {
  Eigen::Vector2cd total, pressure, shear;
};
PSParts ps_decompose(const std::vector<ModeSolution>& modes, const Eigen::Vector2d& x);

// Resonant two-layer inclusion (core rho2 on r < r0, annulus rho1 on r0 < r < r1, common lambda, mu).
struct ResonanceResult {
  double rho1 = 0.0, rho2 = 0.0;
  double t1 = 0.0, t2 = 0.0;  // k_p r0 in annulus and core
  double t_star = 0.0;        // k_p r1 in the annulus
  Eigen::Vector2cd c;         // unit null vector (c1, c2)
  double det_residual = 0.0;  // |det| of the normalized 2x2 system
  double boundary_residual = 0.0;      // |T u_1| at r1 relative to |u_1'| scale
  double transmission_residual = 0.0;  // |u_1 - u_2| + |u_1' - u_2'| at r0
};
struct ResonanceSearch {
  double t_max = 40.0;     // search window for t*, t2
  int root_index = 1;      // which positive root of f to use for t*
};
ResonanceResult find_resonant_densities(double lambda, double mu, double r0, double r1, double omega,
                                        const ResonanceSearch& search = {});
// Annulus rho1 on r0 < r < r1 around a core rho2: mode-0 config with outer radius r1.
LayeredDiskConfig resonance_config(double lambda, double mu, double r0, double r1, double rho1, double rho2);

struct EnergyReport {
  double lhs = 0.0;  // omega^2 sum_j Im rho_j int_{layer j} |u|^2
  double rhs = 0.0;  // -Im int_{boundary} psi . conj(u - u0)
  double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|); 0 when both are exactly 0
};
// psi: traction coefficients (t_r, t_theta) for signed modes -n_max..n_max (index n + n_max).
// Requires real Lame constants in every layer.
EnergyReport energy_identity_check(const LayeredDiskConfig& config, const IsotropicMedium& background, double omega,
                                   const std::vector<Eigen::Vector2cd>& psi);

// Normal / tangential split of the 2D traction: T u = A d_nu u + B d_tau u with tau = (-nu_2, nu_1).
Eigen::Matrix2d traction_normal_matrix(double lambda, double mu, const Eigen::Vector2d& nu);
Eigen::Matrix2d traction_tangential_matrix(double lambda, double mu, const Eigen::Vector2d& nu);
// T u = 2 mu d_nu u + lambda nu div u + mu tau (d_2 u_1 - d_1 u_2); grad(i, j) = d_j u_i.
Eigen::Vector2cd traction_from_gradient(cplx lambda, cplx mu, const Eigen::Vector2d& nu, const Eigen::Matrix2cd& grad);

}  // namespace elastocloak
