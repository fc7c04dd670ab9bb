#include <bit>
#include <cmath>
#include <fstream>

#include "elastocloak/kernels.hpp"

namespace elastocloak {

namespace {

constexpr double kPi = M_PI;

Eigen::Matrix2cd profile_matrix(const RadialProfile& p, const Eigen::Vector2d& e) {
  return p.p1 * Eigen::Matrix2cd::Identity() + p.p2 * (e * e.transpose()).cast<cplx>();
}

Eigen::Matrix2d rotation(double t) {
  Eigen::Matrix2d q;
  q << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return q;
}

Eigen::Vector2d on_circle(double radius, double t) { return radius * Eigen::Vector2d(std::cos(t), std::sin(t)); }
Eigen::Vector2d unit(double t) { return {std::cos(t), std::sin(t)}; }

// Xi with the radial profile replaced by the coefficients of ln r in its log split.
Eigen::Matrix2cd traction_log_part(const Eigen::Vector2d& x, const Eigen::Vector2d& y, const Eigen::Vector2d& nu,
                                   const LogSplitProfile& s, const IsotropicMedium& m) {
  const double r = (x - y).norm();
  const Eigen::Vector2d e = (x - y) / r;
  const double en = e.dot(nu);
  const cplx q = s.a2 / r;
  Eigen::Matrix2cd xi;
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k) {
      const double dlk = l == k ? 1.0 : 0.0;
      cplx v = -m.lambda * nu(k) * (s.da1 + s.da2 + q) * e(l);
      v -= m.mu * (s.da1 * en * dlk + s.da2 * en * e(k) * e(l) + q * (nu(k) * e(l) + nu(l) * e(k) - 2.0 * e(k) * e(l) * en));
      v -= m.mu * (s.da1 * e(k) * nu(l) + s.da2 * en * e(k) * e(l) + q * (nu(k) * e(l) + dlk * en - 2.0 * e(l) * e(k) * en));
      xi(l, k) = v;
    }
  return xi;
}

// Smooth remainder of R Xi(x(t), y(tau)) after removing the Cauchy and logarithmic parts.
Eigen::Matrix2cd traction_remainder(double radius, double t, double tau, double omega, const IsotropicMedium& m,
                                    cplx c_cot) {
  const Eigen::Vector2d x = on_circle(radius, t), y = on_circle(radius, tau), nu = unit(tau);
  const double r = (x - y).norm();
  const double half = 0.5 * (tau - t);
  Eigen::Matrix2d rot90;
  rot90 << 0.0, -1.0, 1.0, 0.0;
  const LogSplitProfile s = green_log_split_2d(r, omega, m);
  const Eigen::Matrix2cd lin = 0.5 * radius * traction_log_part(x, y, nu, s, m);
  const double log4sin2 = std::log(4.0 * std::sin(half) * std::sin(half));
  return radius * traction_kernel_2d(x, y, nu, omega, m) - c_cot * rot90.cast<cplx>() * (std::cos(half) / std::sin(half)) -
         lin * log4sin2;
}

void require_operator_inputs(const CircleQuadrature& q, double omega) {
  if (q.n_points < 4 || q.n_points % 2 != 0) throw DomainError("quadrature needs an even number of nodes >= 4");
  if (omega < 0.0) throw DomainError("omega must be non-negative");
}

}  // namespace

CircleQuadrature circle_quadrature(double radius, int n_points) {
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  if (n_points < 4 || n_points % 2 != 0) throw DomainError("number of nodes must be even and >= 4");
  CircleQuadrature q;
  q.radius = radius;
  q.n_points = n_points;
  for (int j = 0; j < n_points; ++j) {
    const double t = 2.0 * kPi * j / n_points;
    q.nodes.push_back(t);
    q.weights.push_back(2.0 * kPi * radius / n_points);
    q.points.push_back(on_circle(radius, t));
    q.normals.push_back(unit(t));
  }
  return q;
}

LayerOperators layer_operators(const CircleQuadrature& q, double omega, const IsotropicMedium& m) {
  require_operator_inputs(q, omega);
  const int nn = q.n_points;
  const int n = nn / 2;
  const double radius = q.radius;
  const double step = kPi / n;
  const double log_r = std::log(radius);

  // Kress weights for ln(4 sin^2((t - tau) / 2)) and trigonometric weights for cot((tau - t) / 2),
  // both depending only on the node offset.
  std::vector<double> w_log(nn), w_cot(nn);
  for (int d = 0; d < nn; ++d) {
    const double s = 2.0 * kPi * d / nn;
    double acc_log = 0.0, acc_cot = 0.0;
    for (int k = 1; k < n; ++k) {
      acc_log += std::cos(k * s) / k;
      acc_cot += std::sin(k * s);
    }
    w_log[d] = -2.0 * step * acc_log - step / n * std::cos(n * s);
    w_cot[d] = -2.0 * step * acc_cot;
  }

  const cplx p_mod = m.lambda + 2.0 * m.mu;
  // Cauchy part of R Xi on the circle: c_half E cot((tau - t) / 2).
  const cplx c_half = m.mu / (4.0 * kPi * p_mod);
  Eigen::Matrix2d rot90;
  rot90 << 0.0, -1.0, 1.0, 0.0;

  // Diagonal remainder at t = 0 from symmetric averages and Richardson extrapolation.
  auto sym = [&](double s) {
    return 0.5 * (traction_remainder(radius, 0.0, s, omega, m, c_half) +
                  traction_remainder(radius, 0.0, -s, omega, m, c_half));
  };
  const double s0 = 0.04;
  const Eigen::Matrix2cd diag_remainder = (64.0 * sym(s0 / 4.0) - 20.0 * sym(s0 / 2.0) + sym(s0)) / 45.0;

  const LogSplitProfile at0 = green_log_split_2d(0.0, omega, m);

  LayerOperators ops;
  ops.S = Eigen::MatrixXcd::Zero(2 * nn, 2 * nn);
  ops.K = Eigen::MatrixXcd::Zero(2 * nn, 2 * nn);
  for (int i = 0; i < nn; ++i) {
    const double ti = q.nodes[i];
    const Eigen::Vector2d xi = q.points[i];
    for (int j = 0; j < nn; ++j) {
      const int d = (i - j + nn) % nn;
      Eigen::Matrix2cd s_block, k_block;
      if (i == j) {
        const Eigen::Vector2d tangent(-std::sin(ti), std::cos(ti));
        const Eigen::Matrix2cd a = at0.a1 * Eigen::Matrix2cd::Identity();
        const Eigen::Matrix2cd b =
            at0.b1 * Eigen::Matrix2cd::Identity() + at0.b2 * (tangent * tangent.transpose()).cast<cplx>();
        s_block = w_log[0] * 0.5 * radius * a + step * radius * (b + a * log_r);
        const Eigen::Matrix2cd rq = rotation(ti).cast<cplx>();
        k_block = step * rq * diag_remainder * rq.transpose();
      } else {
        const Eigen::Vector2d yj = q.points[j];
        const double r = (xi - yj).norm();
        const Eigen::Vector2d e = (xi - yj) / r;
        const LogSplitProfile split = green_log_split_2d(r, omega, m);
        const Eigen::Matrix2cd a = profile_matrix({split.a1, split.a2, 0.0, 0.0}, e);
        const Eigen::Matrix2cd full = profile_matrix(green_profile(r, omega, m, 2), e);
        const double half = 0.5 * (q.nodes[j] - ti);
        const double log4sin2 = std::log(4.0 * std::sin(half) * std::sin(half));
        const Eigen::Matrix2cd smooth = full - 0.5 * a * log4sin2;  // B + A ln R
        s_block = w_log[d] * 0.5 * radius * a + step * radius * smooth;

        const Eigen::Matrix2cd lin = 0.5 * radius * traction_log_part(xi, yj, q.normals[j], split, m);
        const Eigen::Matrix2cd rem = traction_remainder(radius, ti, q.nodes[j], omega, m, c_half);
        k_block = c_half * rot90.cast<cplx>() * w_cot[d] + lin * w_log[d] + step * rem;
      }
      ops.S.block<2, 2>(2 * i, 2 * j) = s_block;
      ops.K.block<2, 2>(2 * i, 2 * j) = k_block;
    }
  }
  return ops;
}

Eigen::Vector2cd single_layer_potential(const CircleQuadrature& q, const Eigen::VectorXcd& phi,
                                        const Eigen::Vector2d& x, double omega, const IsotropicMedium& m) {
  if (phi.size() != 2 * q.n_points) throw DomainError("density size does not match the quadrature");
  Eigen::Vector2cd u = Eigen::Vector2cd::Zero();
  for (int j = 0; j < q.n_points; ++j) {
    const double r = (x - q.points[j]).norm();
    const Eigen::Vector2d e = (x - q.points[j]) / r;
    u += q.weights[j] * profile_matrix(green_profile(r, omega, m, 2), e) * phi.segment<2>(2 * j);
  }
  return u;
}

Eigen::Vector2cd double_layer_potential(const CircleQuadrature& q, const Eigen::VectorXcd& phi,
                                        const Eigen::Vector2d& x, double omega, const IsotropicMedium& m) {
  if (phi.size() != 2 * q.n_points) throw DomainError("density size does not match the quadrature");
  Eigen::Vector2cd u = Eigen::Vector2cd::Zero();
  for (int j = 0; j < q.n_points; ++j)
    u += q.weights[j] * traction_kernel_2d(x, q.points[j], q.normals[j], omega, m) * phi.segment<2>(2 * j);
  return u;
}

void export_matrix(const std::string& path, const Eigen::MatrixXcd& a, double radius, double omega) {
  static_assert(std::endian::native == std::endian::little, "matrix export assumes a little-endian host");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  const nlohmann::json header = {{"rows", a.rows()}, {"cols", a.cols()}, {"radius", radius},
                                 {"omega", omega},   {"layout", "row-major complex128"}};
  out << header.dump() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double v[2] = {a(i, j).real(), a(i, j).imag()};
      out.write(reinterpret_cast<const char*>(v), sizeof v);
    }
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

Eigen::MatrixXcd import_matrix(const std::string& path, nlohmann::json* header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::string line;
  std::getline(in, line);
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad matrix header: ") + e.what());
  }
  const Eigen::Index rows = h.at("rows").get<Eigen::Index>(), cols = h.at("cols").get<Eigen::Index>();
  Eigen::MatrixXcd a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double v[2];
      in.read(reinterpret_cast<char*>(v), sizeof v);
      if (!in) throw Error(ErrorKind::Parse, "truncated matrix payload in " + path);
      a(i, j) = {v[0], v[1]};
    }
  if (header) *header = h;
  return a;
}

}  // namespace elastocloak
