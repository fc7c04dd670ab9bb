#include <cmath>
#include <random>

#include "elastocloak/harness.hpp"
#include "elastocloak/kernels.hpp"

namespace elastocloak::harness {

namespace {

using Green = std::function<Eigen::MatrixXcd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

Green green_for(double omega, const IsotropicMedium& m) {
  if (omega == 0.0) return [m](const Eigen::VectorXd& x, const Eigen::VectorXd& y) { return green_static(x, y, m); };
  return [m, omega](const Eigen::VectorXd& x, const Eigen::VectorXd& y) { return green_omega(x, y, omega, m); };
}

Check reciprocity_suite(const KernelCheckInputs& in, std::uint64_t seed) {
  const Green g = green_for(in.omega, in.medium);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int dim : {2, 3})
    for (int i = 0; i < in.reciprocity_pairs; ++i) {
      Eigen::VectorXd x(dim), y(dim);
      for (int k = 0; k < dim; ++k) {
        x(k) = u(rng);
        y(k) = u(rng);
      }
      if ((x - y).norm() < 1e-3) continue;
      const Eigen::MatrixXcd a = g(x, y), b = g(y, x);
      worst = std::max(worst, (a - b.transpose()).norm() / std::max(1.0, a.norm()));
    }
  return {"reciprocity", worst < 1e-12, worst, "max |Pi(x,y) - Pi(y,x)^T| / max(1, |Pi|) < 1e-12"};
}

// Fourth-order central differences of every column of Pi(., y) in 2D.
Check navier_suite(const KernelCheckInputs& in, std::uint64_t seed) {
  const IsotropicMedium& m = in.medium;
  const Green g = green_for(in.omega, m);
  const double step = 4e-3;
  const double w1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  const double w2[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
  Eigen::VectorXd y(2);
  y << 0.1, -0.2;
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI), dist(0.5, 1.5);
  double worst = 0.0;
  for (int s = 0; s < 8; ++s) {
    const double a = angle(rng), d = dist(rng);
    const Eigen::Vector2d x0 = y + d * Eigen::Vector2d(std::cos(a), std::sin(a));
    const auto at = [&](double dx, double dy) {
      Eigen::VectorXd x(2);
      x << x0(0) + dx, x0(1) + dy;
      return Eigen::Matrix2cd(g(x, y));
    };
    Eigen::Matrix2cd dxx = Eigen::Matrix2cd::Zero(), dyy = dxx, dxy = dxx;
    for (int i = 0; i < 5; ++i) {
      dxx += w2[i] * at((i - 2) * step, 0.0);
      dyy += w2[i] * at(0.0, (i - 2) * step);
      for (int j = 0; j < 5; ++j)
        if (w1[i] != 0.0 && w1[j] != 0.0) dxy += w1[i] * w1[j] * at((i - 2) * step, (j - 2) * step);
    }
    dxx /= step * step;
    dyy /= step * step;
    dxy /= step * step;
    const Eigen::Matrix2cd u = at(0.0, 0.0);
    for (int c = 0; c < 2; ++c) {
      const Eigen::Vector2cd lap = dxx.col(c) + dyy.col(c);
      const Eigen::Vector2cd grad_div(dxx(0, c) + dxy(1, c), dxy(0, c) + dyy(1, c));
      const Eigen::Vector2cd inertia = m.rho * in.omega * in.omega * u.col(c);
      const Eigen::Vector2cd res = m.mu * lap + (m.lambda + m.mu) * grad_div + inertia;
      const double scale = std::max({std::abs(m.mu) * lap.norm(), std::abs(m.lambda + m.mu) * grad_div.norm(), inertia.norm()});
      worst = std::max(worst, res.norm() / scale);
    }
  }
  return {"navier_residual", worst < 1e-6, worst, "relative residual of Pi columns < 1e-6"};
}

Check series_suite(const KernelCheckInputs& in) {
  Eigen::VectorXd x(3), y(3);
  x << 0.1, 0.2, 0.3;
  y = x + 0.5 * Eigen::Vector3d(2.0, -1.0, 2.0).normalized();
  const Eigen::MatrixXcd closed = green_omega(x, y, in.omega, in.medium, GreenMethod::Closed);
  const Eigen::MatrixXcd series = green_omega_series_3d(x, y, in.omega, in.medium, 40);
  const double err = (closed - series).norm() / closed.norm();
  return {"series_vs_closed_3d", err < 1e-10, err, "40-term series vs closed form at |x-y| = 0.5"};
}

Check gap_suite(const KernelCheckInputs& in) {
  const cplx eta = in.negate_eta ? -eta_2d(in.omega, in.medium) : eta_2d(in.omega, in.medium);
  const Eigen::Vector2d x(0.3, 0.1), dir(0.6, 0.8);
  double lo = INFINITY, hi = 0.0;
  for (int k = 0; k <= 6; ++k) {
    const double r = 1e-2 * std::ldexp(1.0, -k);
    const double gap = asymptotic_gap_2d(x, x + r * dir, in.omega, in.medium, eta).norm();
    const double ratio = gap / (r * r * std::abs(std::log(r)));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double spread = hi / lo;
  return {"asymptotic_gap", spread <= 2.0, spread, "gap / (r^2 |ln r|) stable within a factor 2 over r = 1e-2 / 2^k"};
}

Eigen::VectorXcd smooth_density(const CircleQuadrature& q) {
  Eigen::VectorXcd phi(2 * q.n_points);
  for (int j = 0; j < q.n_points; ++j) {
    const double t = q.nodes[j];
    phi(2 * j) = std::cos(t) + 0.5 * std::sin(2.0 * t);
    phi(2 * j + 1) = cplx(0.3 * std::cos(3.0 * t), 0.2 * std::sin(t));
  }
  return phi;
}

// DL(R(1 + e)) - DL(R(1 - e)) extrapolated to e -> 0, against phi.
Check jump_suite(const KernelCheckInputs& in) {
  const double radius = 1.0;
  const CircleQuadrature fine = circle_quadrature(radius, 8192);
  const Eigen::VectorXcd phi = smooth_density(fine);
  double worst = 0.0;
  for (int target : {100, 700, 1300}) {
    const double t = fine.nodes[target];
    const Eigen::Vector2d dir(std::cos(t), std::sin(t));
    const auto jump = [&](double e) {
      return Eigen::Vector2cd(double_layer_potential(fine, phi, radius * (1.0 + e) * dir, in.omega, in.medium) -
                              double_layer_potential(fine, phi, radius * (1.0 - e) * dir, in.omega, in.medium));
    };
    const double e = 0.01;
    const Eigen::Vector2cd limit = (8.0 * jump(e / 4.0) - 6.0 * jump(e / 2.0) + jump(e)) / 3.0;
    const Eigen::Vector2cd expected = phi.segment<2>(2 * target);
    worst = std::max(worst, (limit - expected).norm() / expected.norm());
  }
  return {"jump_relation", worst < 1e-4, worst, "exterior - interior double layer == density"};
}

// Interior Navier field of a point source outside the disk: (I/2 + K) u == S (T u) on the boundary.
Check calderon_suite(const KernelCheckInputs& in) {
  const Green g = green_for(in.omega, in.medium);
  Eigen::VectorXd z(2);
  z << 2.5, -1.0;
  const Eigen::Vector2cd c(1.0, cplx(0.3, -0.5));
  double coarse = 0.0, fine = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const int n = in.quadrature_points * (pass + 1);
    const CircleQuadrature q = circle_quadrature(1.0, n);
    const LayerOperators ops = layer_operators(q, in.omega, in.medium);
    Eigen::VectorXcd u(2 * n), t(2 * n);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd y = q.points[j];
      u.segment<2>(2 * j) = g(y, z) * c;
      t.segment<2>(2 * j) = traction_kernel_2d(z, q.points[j], q.normals[j], in.omega, in.medium).transpose() * c;
    }
    const double res = (0.5 * u + ops.K * u - ops.S * t).norm() / u.norm();
    (pass == 0 ? coarse : fine) = res;
  }
  const bool ok = fine < 1e-8 && fine <= std::max(coarse, 1e-12);
  return {"calderon", ok, fine, "(I/2 + K) u - S T u relative residual < 1e-8 after refinement"};
}

Check symmetric_static_suite(const KernelCheckInputs& in) {
  const CircleQuadrature q = circle_quadrature(1.0, in.quadrature_points);
  const LayerOperators ops = layer_operators(q, 0.0, in.medium);
  const double asym = (ops.S - ops.S.transpose()).norm() / ops.S.norm();
  return {"static_s_symmetric", asym < 1e-12, asym, "static single-layer matrix is symmetric"};
}

}  // namespace

Report cmd_kernelcheck(const HarnessConfig& c) {
  const KernelCheckInputs& in = c.kernelcheck;
  Report r;
  r.command = "kernelcheck";
  r.csv_header = {"suite", "passed", "value"};
  r.checks.push_back(reciprocity_suite(in, c.seed));
  r.checks.push_back(navier_suite(in, c.seed));
  if (in.omega > 0.0) {
    r.checks.push_back(series_suite(in));
    r.checks.push_back(gap_suite(in));
  } else {
    r.checks.push_back(symmetric_static_suite(in));
  }
  r.checks.push_back(jump_suite(in));
  r.checks.push_back(calderon_suite(in));
  for (const auto& ch : r.checks) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", ch.value);
    r.csv_rows.push_back({ch.name, ch.passed ? "1" : "0", buf});
  }
  r.summary = {{"omega", in.omega}, {"static_only", in.omega == 0.0}, {"negate_eta", in.negate_eta}};
  return r;
}

}  // namespace elastocloak::harness
