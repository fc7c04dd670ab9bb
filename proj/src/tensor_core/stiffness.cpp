#include <algorithm>
#include <limits>
#include <cmath>
#include <random>

#include "elastocloak/errors.hpp"
#include "elastocloak/tensor.hpp"

namespace elastocloak {

namespace {

void require_dim(int dim) {
  if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3, got " + std::to_string(dim));
}

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

// Index pairs of the unscaled Voigt convention.
std::vector<std::pair<int, int>> voigt_pairs(int dim) {
  if (dim == 2) return {{0, 0}, {1, 1}, {0, 1}};
  return {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
}

double quotient(const StiffnessTensor& c, const Eigen::MatrixXd& a) {
  const int d = c.dim();
  double num = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) num += c(i, j, k, l).real() * a(k, l) * a(i, j);
  return num / a.squaredNorm();
}

}  // namespace

bool IsotropicMedium::is_regular_real(int dim) const {
  const double tol = 0.0;
  if (std::abs(lambda.imag()) > tol || std::abs(mu.imag()) > tol || std::abs(rho.imag()) > tol) return false;
  return mu.real() > 0.0 && dim * lambda.real() + 2.0 * mu.real() > 0.0 && rho.real() > 0.0;
}

StiffnessTensor::StiffnessTensor(int dim) : dim_(dim) {
  require_dim(dim);
  entries_.assign(static_cast<std::size_t>(dim) * dim * dim * dim, cplx(0.0));
}

bool StiffnessTensor::is_real(double tol) const {
  for (const auto& v : entries_)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

double StiffnessTensor::max_abs() const {
  double m = 0.0;
  for (const auto& v : entries_) m = std::max(m, std::abs(v));
  return m;
}

SymmetricMatrix::SymmetricMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw DomainError("matrix dimension must be positive");
  upper_.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, cplx(0.0));
}

SymmetricMatrix SymmetricMatrix::from_matrix(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw DomainError("symmetric matrix needs a square input");
  SymmetricMatrix s(static_cast<int>(a.rows()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
  return s;
}

cplx SymmetricMatrix::get(int i, int j) const {
  if (i > j) std::swap(i, j);
  return upper_[static_cast<std::size_t>(i) * dim_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i)];
}

void SymmetricMatrix::set(int i, int j, cplx v) {
  if (i > j) std::swap(i, j);
  upper_[static_cast<std::size_t>(i) * dim_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i)] = v;
}

Eigen::MatrixXcd SymmetricMatrix::dense() const {
  Eigen::MatrixXcd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = get(i, j);
  return m;
}

StiffnessTensor iso_stiffness(const IsotropicMedium& medium, int dim) {
  require_dim(dim);
  StiffnessTensor c(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          c(i, j, k, l) = medium.lambda * delta(i, j) * delta(k, l) +
                          medium.mu * (delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k));
  c.set_flags(true, true);
  return c;
}

Eigen::MatrixXcd apply_stiffness(const StiffnessTensor& c, const Eigen::MatrixXcd& a) {
  const int d = c.dim();
  if (a.rows() != d || a.cols() != d) throw DomainError("matrix shape does not match tensor dimension");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out(i, j) += c(i, j, k, l) * a(k, l);
  return out;
}

LegendreEstimate check_legendre(const StiffnessTensor& c, int samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("check_legendre needs at least one sample");
  if (!c.is_real(1e-14 * std::max(1.0, c.max_abs())))
    throw DomainError("ellipticity defined for real tensors");
  const int d = c.dim();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      best = std::min(best, quotient(c, e));
    }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) a(i, j) = a(j, i) = normal(rng);
    best = std::min(best, quotient(c, a));
  }
  return {best > 1e-12, best};
}

double legendre_constant(const StiffnessTensor& c) {
  if (!c.is_real(1e-14 * std::max(1.0, c.max_abs()))) throw DomainError("ellipticity defined for real tensors");
  const int d = c.dim();
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = e(j, i) = std::sqrt(0.5);
      }
      basis.push_back(e);
    }
  const int n = static_cast<int>(basis.size());
  Eigen::MatrixXd q(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) s += c(i, j, k, l).real() * basis[b](k, l) * basis[a](i, j);
      q(a, b) = s;
    }
  const Eigen::MatrixXd sym = 0.5 * (q + q.transpose());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

SymmetryReport symmetry_report(const StiffnessTensor& c, double tol) {
  const int d = c.dim();
  SymmetryReport r;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const cplx v = c(i, j, k, l);
          r.major_violation = std::max(r.major_violation, std::abs(v - c(k, l, i, j)));
          r.minor_violation = std::max({r.minor_violation, std::abs(v - c(j, i, k, l)), std::abs(v - c(i, j, l, k))});
        }
  r.major = r.major_violation <= tol;
  r.minor = r.minor_violation <= tol;
  r.max_violation = std::max(r.major_violation, r.minor_violation);
  return r;
}

Eigen::MatrixXcd voigt_matrix(const StiffnessTensor& c, double tol) {
  const SymmetryReport rep = symmetry_report(c, tol);
  if (!rep.minor) throw DomainError("Voigt form needs minor symmetry (violation " + std::to_string(rep.minor_violation) + ")");
  const auto pairs = voigt_pairs(c.dim());
  const int n = static_cast<int>(pairs.size());
  Eigen::MatrixXcd v(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) v(a, b) = c(pairs[a].first, pairs[a].second, pairs[b].first, pairs[b].second);
  return v;
}

StiffnessTensor change_frame(const StiffnessTensor& c, const Eigen::MatrixXd& basis) {
  const int d = c.dim();
  if (basis.rows() != d || basis.cols() != d) throw DomainError("frame basis shape does not match tensor dimension");
  // Contract one index at a time.
  StiffnessTensor t1(d), t2(d), t3(d), out(d);
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          cplx s = 0.0;
          for (int i = 0; i < d; ++i) s += basis(i, a) * c(i, j, k, l);
          t1(a, j, k, l) = s;
        }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          cplx s = 0.0;
          for (int j = 0; j < d; ++j) s += basis(j, b) * t1(a, j, k, l);
          t2(a, b, k, l) = s;
        }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int cc = 0; cc < d; ++cc)
        for (int l = 0; l < d; ++l) {
          cplx s = 0.0;
          for (int k = 0; k < d; ++k) s += basis(k, cc) * t2(a, b, k, l);
          t3(a, b, cc, l) = s;
        }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int cc = 0; cc < d; ++cc)
        for (int dd = 0; dd < d; ++dd) {
          cplx s = 0.0;
          for (int l = 0; l < d; ++l) s += basis(l, dd) * t3(a, b, cc, l);
          out(a, b, cc, dd) = s;
        }
  out.set_flags(c.major_symmetric(), c.minor_symmetric());
  return out;
}

nlohmann::json tensor_to_json(const StiffnessTensor& c) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& v : c.entries()) entries.push_back({v.real(), v.imag()});
  return {{"dim", c.dim()},
          {"entries", entries},
          {"flags", {{"major_symmetric", c.major_symmetric()}, {"minor_symmetric", c.minor_symmetric()}}}};
}

StiffnessTensor tensor_from_json(const nlohmann::json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    StiffnessTensor c(dim);
    const auto& e = j.at("entries");
    if (e.size() != c.entries().size()) throw DomainError("tensor JSON has " + std::to_string(e.size()) + " entries");
    std::size_t idx = 0;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l, ++idx) c(a, b, k, l) = cplx(e[idx].at(0).get<double>(), e[idx].at(1).get<double>());
    bool major = false, minor = false;
    if (j.contains("flags")) {
      major = j["flags"].value("major_symmetric", false);
      minor = j["flags"].value("minor_symmetric", false);
    }
    c.set_flags(major, minor);
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("tensor JSON: ") + ex.what());
  }
}

}  // namespace elastocloak
