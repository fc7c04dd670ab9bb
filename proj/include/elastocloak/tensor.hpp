#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include <json.hpp>

namespace elastocloak {

using cplx = std::complex<double>;

struct IsotropicMedium {
  cplx lambda{0.0};
  cplx mu{0.0};
  cplx rho{1.0};

  // mu > 0 and N lambda + 2 mu > 0 with real constants and real positive density.
  bool is_regular_real(int dim) const;
};

// Rank-4 tensor C_ijkl, indices 0-based, stored row-major ((i*d + j)*d + k)*d + l.
class StiffnessTensor {
 public:
  explicit StiffnessTensor(int dim);

  int dim() const { return dim_; }
  cplx& operator()(int i, int j, int k, int l) { return entries_[index(i, j, k, l)]; }
  const cplx& operator()(int i, int j, int k, int l) const { return entries_[index(i, j, k, l)]; }
  const std::vector<cplx>& entries() const { return entries_; }

  bool major_symmetric() const { return major_; }
  bool minor_symmetric() const { return minor_; }
  void set_flags(bool major, bool minor) {
    major_ = major;
    minor_ = minor;
  }

  bool is_real(double tol = 0.0) const;
  double max_abs() const;

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }

  int dim_;
  std::vector<cplx> entries_;
  bool major_ = false;
  bool minor_ = false;
};

// Symmetric matrix; symmetry holds by construction (only the upper triangle is stored).
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int dim);
  // Symmetric part (A + A^T) / 2.
  static SymmetricMatrix from_matrix(const Eigen::MatrixXcd& a);

  int dim() const { return dim_; }
  cplx get(int i, int j) const;
  void set(int i, int j, cplx v);
  Eigen::MatrixXcd dense() const;

 private:
  int dim_;
  std::vector<cplx> upper_;
};

StiffnessTensor iso_stiffness(const IsotropicMedium& medium, int dim);

// (C:A)_ij = sum_kl C_ijkl a_kl
Eigen::MatrixXcd apply_stiffness(const StiffnessTensor& c, const Eigen::MatrixXcd& a);

struct LegendreEstimate {
  bool positive = false;
  double c0 = 0.0;
};

// Minimum of (C:A):A / |A|^2 over the orthonormal symmetric basis and `samples` random
// symmetric unit matrices. Real tensors only.
LegendreEstimate check_legendre(const StiffnessTensor& c, int samples, std::uint64_t seed = 20240611u);

// Exact minimum of (C:A):A / |A|^2 over real symmetric A (smallest eigenvalue of the
// symmetrized quadratic form on an orthonormal basis of symmetric matrices). Real tensors only.
double legendre_constant(const StiffnessTensor& c);

struct SymmetryReport {
  bool major = false;
  bool minor = false;
  double major_violation = 0.0;
  double minor_violation = 0.0;
  double max_violation = 0.0;
};

SymmetryReport symmetry_report(const StiffnessTensor& c, double tol);

// Unscaled Voigt matrix (3x3 in 2D with pairs 11,22,12; 6x6 in 3D with 11,22,33,23,13,12).
Eigen::MatrixXcd voigt_matrix(const StiffnessTensor& c, double tol = 1e-12);

// Components in a new orthonormal frame whose basis vectors are the columns of `basis`:
// C'_abcd = sum R_ia R_jb R_kc R_ld C_ijkl.
StiffnessTensor change_frame(const StiffnessTensor& c, const Eigen::MatrixXd& basis);

nlohmann::json tensor_to_json(const StiffnessTensor& c);
StiffnessTensor tensor_from_json(const nlohmann::json& j);

}  // namespace elastocloak
