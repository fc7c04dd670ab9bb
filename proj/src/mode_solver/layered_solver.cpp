#include <cmath>

#include "elastocloak/mode_solver.hpp"

namespace elastocloak {

namespace {

struct BasisFn {
  Wave wave;
  RadialKind kind;
};

std::vector<BasisFn> layer_basis(const LayeredDiskConfig& c, std::size_t i) {
  const bool core = i + 1 == c.layers.size() && c.inner == InnerCondition::Core;
  if (core) return {{Wave::Pressure, RadialKind::J}, {Wave::Shear, RadialKind::J}};
  return {{Wave::Pressure, RadialKind::J}, {Wave::Pressure, RadialKind::H}, {Wave::Shear, RadialKind::J},
          {Wave::Shear, RadialKind::H}};
}

double norm_radius(const LayeredDiskConfig& c, std::size_t i, RadialKind kind) {
  return kind == RadialKind::J ? c.layers[i].outer_radius : c.layer_inner_radius(i);
}

PolarFields basis_fields(const LayeredDiskConfig& c, std::size_t i, const BasisFn& b, double omega, int n, double r) {
  return potential_fields(c.layers[i].medium, omega, n, r, b.wave, b.kind, norm_radius(c, i, b.kind));
}

// Rows (u_r, u_t, sigma_rr, sigma_rt) of one basis function.
Eigen::Vector4cd state(const PolarFields& f, const IsotropicMedium& m) {
  return {f.u_r, f.u_t, f.sigma_rr(m.lambda, m.mu), f.sigma_rt(m.mu)};
}

// Alternating row / column max-norm scaling (Ruiz).
void equilibrate(const Eigen::MatrixXcd& a, Eigen::VectorXd& rows, Eigen::VectorXd& cols) {
  rows = Eigen::VectorXd::Ones(a.rows());
  cols = Eigen::VectorXd::Ones(a.cols());
  Eigen::MatrixXcd s = a;
  for (int it = 0; it < 30; ++it) {
    double worst = 0.0;
    for (int i = 0; i < s.rows(); ++i) {
      const double m = s.row(i).cwiseAbs().maxCoeff();
      if (m > 0.0) {
        const double f = 1.0 / std::sqrt(m);
        s.row(i) *= f;
        rows(i) *= f;
        worst = std::max(worst, std::abs(1.0 - m));
      }
    }
    for (int j = 0; j < s.cols(); ++j) {
      const double m = s.col(j).cwiseAbs().maxCoeff();
      if (m > 0.0) {
        const double f = 1.0 / std::sqrt(m);
        s.col(j) *= f;
        cols(j) *= f;
        worst = std::max(worst, std::abs(1.0 - m));
      }
    }
    if (worst < 1e-3) break;
  }
}

}  // namespace

std::size_t ModeSolution::layer_index(double r) const {
  const auto& layers = config_.layers;
  if (r > layers.front().outer_radius * (1.0 + 1e-12)) throw DomainError("radius outside the layered disk");
  for (std::size_t i = layers.size(); i-- > 0;) {
    if (r <= layers[i].outer_radius * (1.0 + 1e-14)) {
      if (r < config_.layer_inner_radius(i) * (1.0 - 1e-12)) throw DomainError("radius inside the traction-free hole");
      return i;
    }
  }
  return 0;
}

PolarFields ModeSolution::fields_at(double r) const {
  PolarFields f = fields_at(r, Wave::Pressure);
  f += fields_at(r, Wave::Shear);
  return f;
}

PolarFields ModeSolution::fields_at(double r, Wave wave) const {
  const std::size_t i = layer_index(r);
  const auto basis = layer_basis(config_, i);
  PolarFields sum;
  std::size_t slot = 0;
  for (const auto& b : basis) {
    const std::size_t idx = basis.size() == 2 ? (slot == 0 ? 0 : 2) : slot;
    ++slot;
    if (b.wave != wave || coeffs_[i][idx] == 0.0) continue;
    sum += basis_fields(config_, i, b, omega_, n_, r) * coeffs_[i][idx];
  }
  return sum;
}

ModeSystem::ModeSystem(const LayeredDiskConfig& config, double omega, int n) : config_(config), omega_(omega), n_(n) {
  config_.validate();
  if (!(omega > 0.0)) throw DomainError("mode solver needs omega > 0");
  const std::size_t L = config_.layers.size();
  std::vector<int> offset(L + 1, 0);
  for (std::size_t i = 0; i < L; ++i) offset[i + 1] = offset[i] + static_cast<int>(layer_basis(config_, i).size());
  const int unknowns = offset[L];
  matrix_ = Eigen::MatrixXcd::Zero(unknowns, unknowns);

  int row = 0;
  // Outer traction.
  {
    const auto basis = layer_basis(config_, 0);
    const double R = config_.layers[0].outer_radius;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Eigen::Vector4cd s = state(basis_fields(config_, 0, basis[b], omega_, n_, R), config_.layers[0].medium);
      matrix_(row, offset[0] + b) = s(2);
      matrix_(row + 1, offset[0] + b) = s(3);
    }
    row += 2;
  }
  // Continuity of displacement and traction across each interface.
  for (std::size_t i = 0; i + 1 < L; ++i) {
    const double r = config_.layers[i + 1].outer_radius;
    for (std::size_t side = 0; side < 2; ++side) {
      const std::size_t li = i + side;
      const double sign = side == 0 ? 1.0 : -1.0;
      const auto basis = layer_basis(config_, li);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const Eigen::Vector4cd s = state(basis_fields(config_, li, basis[b], omega_, n_, r), config_.layers[li].medium);
        for (int q = 0; q < 4; ++q) matrix_(row + q, offset[li] + b) = sign * s(q);
      }
    }
    row += 4;
  }
  if (config_.inner == InnerCondition::TractionFree) {
    const std::size_t li = L - 1;
    const auto basis = layer_basis(config_, li);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Eigen::Vector4cd s =
          state(basis_fields(config_, li, basis[b], omega_, n_, config_.inner_radius), config_.layers[li].medium);
      matrix_(row, offset[li] + b) = s(2);
      matrix_(row + 1, offset[li] + b) = s(3);
    }
    row += 2;
  }

  equilibrate(matrix_, row_scale_, col_scale_);
  scaled_ = row_scale_.asDiagonal() * matrix_ * col_scale_.asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(scaled_);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  cond_ = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

ModeSolution ModeSystem::solve(const Eigen::Vector2cd& traction) const {
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(matrix_.rows());
  rhs(0) = traction(0);
  rhs(1) = traction(1);
  const Eigen::VectorXcd y = scaled_.fullPivLu().solve(row_scale_.asDiagonal() * rhs);
  const Eigen::VectorXcd x = col_scale_.asDiagonal() * y;

  ModeSolution sol;
  sol.config_ = config_;
  sol.omega_ = omega_;
  sol.n_ = n_;
  int k = 0;
  for (std::size_t i = 0; i < config_.layers.size(); ++i) {
    std::array<cplx, 4> c{0.0, 0.0, 0.0, 0.0};
    if (layer_basis(config_, i).size() == 2) {
      c[0] = x(k++);
      c[2] = x(k++);
    } else {
      for (int b = 0; b < 4; ++b) c[b] = x(k++);
    }
    sol.coeffs_.push_back(c);
  }
  return sol;
}

Eigen::Matrix2cd ModeSystem::ntd_block() const {
  Eigen::Matrix2cd out;
  const double R = config_.layers[0].outer_radius;
  for (int col = 0; col < 2; ++col) {
    const ModeSolution s = solve(Eigen::Vector2cd::Unit(col));
    const PolarFields f = s.fields_at(R);
    out(0, col) = f.u_r;
    out(1, col) = f.u_t;
  }
  return out;
}

double mode_condition(const LayeredDiskConfig& config, double omega, int n) {
  return ModeSystem(config, omega, n).condition();
}

Eigen::Matrix2cd NtDOperator::block(int n) const {
  const int a = std::abs(n);
  if (a > n_max) throw DomainError("mode outside the operator's range");
  if (n >= 0) return blocks[a];
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Identity();
  d(1, 1) = -1.0;
  return d * blocks[a] * d;
}

NtDOperator assemble_ntd(const LayeredDiskConfig& config, double omega, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  NtDOperator op;
  op.omega = omega;
  op.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    const ModeSystem sys(config, omega, n);
    if (!(sys.condition() <= kNearResonanceCondition)) throw NearResonanceError(n, sys.condition());
    op.blocks.push_back(sys.ntd_block());
  }
  return op;
}

std::vector<double> ntd_mode_distances(const NtDOperator& a, const NtDOperator& b) {
  if (a.n_max != b.n_max) throw DomainError("NtD operators differ in n_max");
  if (a.omega != b.omega) throw DomainError("NtD operators differ in omega");
  std::vector<double> out;
  for (int n = 0; n <= a.n_max; ++n) {
    const Eigen::Matrix2cd d = a.blocks[n] - b.blocks[n];
    const double smax = Eigen::JacobiSVD<Eigen::Matrix2cd>(d).singularValues()(0);
    out.push_back(std::sqrt(1.0 + static_cast<double>(n) * n) * smax);
  }
  return out;
}

double ntd_distance(const NtDOperator& a, const NtDOperator& b) {
  double m = 0.0;
  for (double d : ntd_mode_distances(a, b)) m = std::max(m, d);
  return m;
}

nlohmann::json ntd_to_json(const NtDOperator& op) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : op.blocks) {
    nlohmann::json e = nlohmann::json::array();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) e.push_back({b(i, j).real(), b(i, j).imag()});
    blocks.push_back(e);
  }
  return {{"omega", op.omega}, {"n_max", op.n_max}, {"blocks", blocks}};
}

NtDOperator ntd_from_json(const nlohmann::json& j) {
  try {
    NtDOperator op;
    op.omega = j.at("omega").get<double>();
    op.n_max = j.at("n_max").get<int>();
    const auto& blocks = j.at("blocks");
    if (static_cast<int>(blocks.size()) != op.n_max + 1) throw Error(ErrorKind::Parse, "NtD JSON block count mismatch");
    for (const auto& e : blocks) {
      if (e.size() != 4) throw Error(ErrorKind::Parse, "NtD block needs 4 entries");
      Eigen::Matrix2cd b;
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) b(i, k) = cplx(e[2 * i + k].at(0).get<double>(), e[2 * i + k].at(1).get<double>());
      op.blocks.push_back(b);
    }
    return op;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("NtD JSON: ") + ex.what());
  }
}

Eigen::Vector2cd cartesian_displacement(const std::vector<ModeSolution>& modes, const Eigen::Vector2d& x) {
  return ps_decompose(modes, x).total;
}

PSParts ps_decompose(const std::vector<ModeSolution>& modes, const Eigen::Vector2d& x) {
  const double r = x.norm();
  const double th = std::atan2(x(1), x(0));
  const Eigen::Vector2cd er(std::cos(th), std::sin(th));
  const Eigen::Vector2cd et(-std::sin(th), std::cos(th));
  PSParts out;
  out.pressure.setZero();
  out.shear.setZero();
  for (const auto& m : modes) {
    const cplx phase = std::exp(cplx(0.0, m.mode() * th));
    const PolarFields p = m.fields_at(r, Wave::Pressure);
    const PolarFields s = m.fields_at(r, Wave::Shear);
    out.pressure += phase * (p.u_r * er + p.u_t * et);
    out.shear += phase * (s.u_r * er + s.u_t * et);
  }
  out.total = out.pressure + out.shear;
  return out;
}

}  // namespace elastocloak
