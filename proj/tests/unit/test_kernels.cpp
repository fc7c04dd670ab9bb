#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "elastocloak/errors.hpp"
#include "elastocloak/kernels.hpp"

using namespace elastocloak;

namespace {

const IsotropicMedium kUnit{1.0, 1.0, 1.0};

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Boundary data of the field y -> Pi(y, z) c and its traction.
void point_source_data(const CircleQuadrature& q, const Eigen::Vector2d& z, double omega, const IsotropicMedium& m,
                       Eigen::VectorXcd& u, Eigen::VectorXcd& t) {
  const Eigen::Vector2cd c(1.0, cplx(0.3, -0.5));
  u.resize(2 * q.n_points);
  t.resize(2 * q.n_points);
  for (int j = 0; j < q.n_points; ++j) {
    const Eigen::MatrixXcd g = omega == 0.0 ? green_static(q.points[j], z, m) : green_omega(q.points[j], z, omega, m);
    u.segment<2>(2 * j) = g * c;
    t.segment<2>(2 * j) = traction_kernel_2d(z, q.points[j], q.normals[j], omega, m).transpose() * c;
  }
}

double calderon_residual(int n, const Eigen::Vector2d& z, double sign, double omega, const IsotropicMedium& m) {
  const CircleQuadrature q = circle_quadrature(1.0, n);
  const LayerOperators ops = layer_operators(q, omega, m);
  Eigen::VectorXcd u, t;
  point_source_data(q, z, omega, m, u, t);
  return (sign * 0.5 * u + ops.K * u - ops.S * t).norm() / u.norm();
}

}  // namespace

TEST_CASE("reciprocity over random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const IsotropicMedium m{2.0, 0.7, cplx(1.3, 0.1)};
  double worst = 0.0;
  for (int dim : {2, 3})
    for (int i = 0; i < 1000; ++i) {
      Eigen::VectorXd x(dim), y(dim);
      for (int k = 0; k < dim; ++k) {
        x(k) = u(rng);
        y(k) = u(rng);
      }
      const Eigen::MatrixXcd a = green_omega(x, y, 1.7, m), b = green_omega(y, x, 1.7, m);
      worst = std::max(worst, (a - b.transpose()).norm() / a.norm());
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("2D static kernel") {
  const Eigen::MatrixXcd g = green_static(vec({1.0, 0.0}), vec({0.0, 0.0}), kUnit);
  Eigen::Matrix2d expected;
  expected << 2.0 / 3.0 / (4.0 * M_PI), 0.0, 0.0, 0.0;
  CHECK((g - expected.cast<cplx>()).norm() < 1e-15);
  // Doubling the separation shifts by -(lambda + 3 mu) ln 2 / (4 pi mu (lambda + 2 mu)) I.
  const IsotropicMedium m{1.5, 0.6, 1.0};
  const Eigen::VectorXd d = vec({0.3, -0.4});
  const Eigen::MatrixXcd shift = green_static(2.0 * d, vec({0.0, 0.0}), m) - green_static(d, vec({0.0, 0.0}), m);
  const double a = -(1.5 + 1.8) / (4.0 * M_PI * 0.6 * (1.5 + 1.2));
  CHECK((shift - a * std::log(2.0) * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("3D static kernel") {
  const Eigen::MatrixXcd g = green_static(vec({0.0, 0.0, 1.0}), vec({0.0, 0.0, 0.0}), kUnit);
  Eigen::Matrix3d expected = 4.0 * Eigen::Matrix3d::Identity();
  expected(2, 2) += 2.0;
  expected /= 24.0 * M_PI;
  CHECK((g - expected.cast<cplx>()).norm() < 1e-15);
  const Eigen::VectorXd d = vec({0.2, -0.5, 0.7});
  const Eigen::MatrixXcd near = green_static(d, Eigen::VectorXd::Zero(3), kUnit);
  const Eigen::MatrixXcd far = green_static(3.0 * d, Eigen::VectorXd::Zero(3), kUnit);
  CHECK((near - 3.0 * far).norm() < 1e-14 * near.norm());
}

TEST_CASE("time-harmonic kernels approach the static ones") {
  const IsotropicMedium m{1.5, 0.6, 1.2};
  // 3D: the difference tends to a constant multiple of the identity.
  const Eigen::VectorXd dir = vec({0.6, 0.0, 0.8});
  const Eigen::VectorXd o = Eigen::VectorXd::Zero(3);
  const auto diff3 = [&](double r) { return Eigen::MatrixXcd(green_omega(r * dir, o, 0.9, m) - green_static(r * dir, o, m)); };
  const Eigen::MatrixXcd lim = diff3(1e-6);
  CHECK((lim - lim(0, 0) * Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-6);  // next term is O(r)
  CHECK((diff3(1e-4) - lim).norm() < 1e-3 * lim.norm());
  // 3D closed form and series agree where the series is used.
  CHECK((green_omega(0.8 * dir, o, 0.9, m, GreenMethod::Closed) - green_omega_series_3d(0.8 * dir, o, 0.9, m)).norm() <
        1e-12 * green_omega(0.8 * dir, o, 0.9, m).norm());
  // 2D closed form and series agree.
  const Eigen::VectorXd d2 = vec({0.5, 0.9});
  CHECK((green_omega(d2, vec({0.0, 0.0}), 1.1, m, GreenMethod::Closed) -
         green_omega(d2, vec({0.0, 0.0}), 1.1, m, GreenMethod::Series))
            .norm() < 1e-12);
  CHECK_THROWS_AS(green_omega(d2, vec({0.0, 0.0}), 0.0, m), DomainError);
}

TEST_CASE("coincidence limit in 2D") {
  const IsotropicMedium m{1.5, 0.6, 1.2};
  const double slope = -(1.5 + 1.8) / (4.0 * M_PI * 0.6 * (1.5 + 1.2));
  for (double w : {0.3, 1.0, 2.5}) {
    const cplx step = eta_2d(2.0 * w, m) - eta_2d(w, m);
    CHECK(std::abs(step.real() / std::log(2.0) - slope) < 1e-12);
    CHECK(std::abs(step.imag()) < 1e-12);
  }
  const Eigen::Vector2d x(0.3, 0.1), dir(0.6, 0.8);
  for (double r : {1e-3, 1e-4}) {
    const Eigen::Matrix2cd gap = asymptotic_gap_2d(x, x + r * dir, 1.0, m);
    CHECK(gap.norm() < 1e-5);
  }
  // Near coincidence the difference is eta I up to the gap.
  const Eigen::Matrix2cd diff = green_omega(x, x + 1e-4 * dir, 1.0, m) - green_static(x, x + 1e-4 * dir, m);
  CHECK(std::abs(diff(0, 0) - diff(1, 1)) < 1e-5);
  CHECK(std::abs(diff(0, 0) - eta_2d(1.0, m)) < 1e-5);
}

TEST_CASE("log split reproduces the profile") {
  const IsotropicMedium m{1.2, 0.9, 1.1};
  for (double r : {0.05, 0.4, 1.3}) {
    const RadialProfile p = green_profile(r, 1.4, m, 2);
    const LogSplitProfile s = green_log_split_2d(r, 1.4, m);
    CHECK(std::abs(s.a1 * std::log(r) + s.b1 - p.p1) < 1e-12);
    CHECK(std::abs(s.a2 * std::log(r) + s.b2 - p.p2) < 1e-12);
  }
}

TEST_CASE("circle quadrature") {
  const CircleQuadrature q = circle_quadrature(1.7, 48);
  double total = 0.0;
  for (double w : q.weights) total += w;
  CHECK(std::abs(total - 2.0 * M_PI * 1.7) < 1e-13);
  CHECK((q.normals[5] - q.points[5] / 1.7).norm() < 1e-15);
  CHECK_THROWS_AS(circle_quadrature(1.0, 47), DomainError);
  CHECK_THROWS_AS(circle_quadrature(-1.0, 48), DomainError);
}

TEST_CASE("double-layer jump equals the density") {
  const CircleQuadrature q = circle_quadrature(1.0, 4096);
  Eigen::VectorXcd phi(2 * q.n_points);
  for (int j = 0; j < q.n_points; ++j) {
    phi(2 * j) = std::cos(q.nodes[j]);
    phi(2 * j + 1) = cplx(0.0, std::sin(2.0 * q.nodes[j]));
  }
  const int target = 500;
  const Eigen::Vector2d dir = q.normals[target];
  const auto jump = [&](double e) {
    return Eigen::Vector2cd(double_layer_potential(q, phi, (1.0 + e) * dir, 1.0, kUnit) -
                            double_layer_potential(q, phi, (1.0 - e) * dir, 1.0, kUnit));
  };
  const Eigen::Vector2cd limit = (8.0 * jump(0.005) - 6.0 * jump(0.01) + jump(0.02)) / 3.0;
  CHECK((limit - phi.segment<2>(2 * target)).norm() < 1e-4);
}

TEST_CASE("Calderon relations for interior and exterior fields") {
  const Eigen::Vector2d outside(2.5, -1.0), inside(0.2, 0.3);
  for (double omega : {0.0, 1.0, 3.0}) {
    CHECK(calderon_residual(128, outside, 1.0, omega, kUnit) < 1e-8);
    CHECK(calderon_residual(128, inside, -1.0, omega, kUnit) < 1e-8);
  }
}

TEST_CASE("Nystrom error decays spectrally") {
  const Eigen::Vector2d z(1.8, 0.4);
  const double e16 = calderon_residual(16, z, 1.0, 1.0, kUnit);
  const double e32 = calderon_residual(32, z, 1.0, 1.0, kUnit);
  const double e64 = calderon_residual(64, z, 1.0, 1.0, kUnit);
  CHECK(e32 < 0.1 * e16);
  CHECK(e64 < 0.1 * e32);
}

TEST_CASE("static single-layer matrix is symmetric") {
  const LayerOperators ops = layer_operators(circle_quadrature(1.0, 40), 0.0, {1.3, 0.7, 1.0});
  CHECK((ops.S - ops.S.transpose()).norm() < 1e-12 * ops.S.norm());
}

TEST_CASE("single-layer potential matches its Nystrom trace away from the boundary") {
  const CircleQuadrature q = circle_quadrature(1.0, 64);
  Eigen::VectorXcd phi(2 * q.n_points);
  for (int j = 0; j < q.n_points; ++j) {
    phi(2 * j) = std::sin(q.nodes[j]);
    phi(2 * j + 1) = 1.0;
  }
  // Direct quadrature of the kernel.
  const Eigen::Vector2d x(0.1, -0.2);
  Eigen::Vector2cd direct = Eigen::Vector2cd::Zero();
  for (int j = 0; j < q.n_points; ++j)
    direct += q.weights[j] * Eigen::Matrix2cd(green_omega(x, q.points[j], 1.0, kUnit)) * phi.segment<2>(2 * j);
  CHECK((single_layer_potential(q, phi, x, 1.0, kUnit) - direct).norm() < 1e-13 * direct.norm());
}

TEST_CASE("matrix export round trip") {
  Eigen::MatrixXcd a(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = cplx(i + 0.25 * j, -j / 3.0);
  const std::string path = (std::filesystem::temp_directory_path() / "ec_export_test.bin").string();
  export_matrix(path, a, 1.5, 2.0);
  nlohmann::json header;
  const Eigen::MatrixXcd b = import_matrix(path, &header);
  CHECK(b == a);
  CHECK(header.at("radius").get<double>() == 1.5);
  CHECK(header.at("omega").get<double>() == 2.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(import_matrix(path), Error);
}

TEST_CASE("exterior cavity field") {
  const double h = 0.1, omega = 1.0;
  const IsotropicMedium m{1.0, 1.0, 1.0};
  const std::map<int, Eigen::Vector2cd> traction{{0, {1.0, 0.0}}, {2, {0.3, cplx(0.0, 0.2)}}, {-1, {0.0, 0.5}}};
  const CavityField f = solve_exterior_cavity(h, traction, omega, m);
  for (const auto& [n, t] : traction) {
    const PolarFields at = f.mode_fields(n, h);
    CHECK(std::abs(at.sigma_rr(m.lambda, m.mu) - t(0)) < 1e-10);
    CHECK(std::abs(at.sigma_rt(m.mu) - t(1)) < 1e-10);
  }
  CHECK_THROWS_AS(f.mode_fields(0, 0.05), DomainError);

  // Pure radial pressure in mode 0 has no shear part.
  const CavityField radial = solve_exterior_cavity(h, {{0, {1.0, 0.0}}}, omega, m);
  CHECK(std::abs(radial.coefficients().at(0)(1)) == 0.0);
  CHECK(radial.displacement(Eigen::Vector2d(0.5, 0.2), Wave::Shear).norm() < 1e-15);

  const CavityField none = solve_exterior_cavity(h, {{1, {0.0, 0.0}}}, omega, m);
  CHECK(none.displacement(Eigen::Vector2d(1.0, 0.0)).norm() == 0.0);

  // Radiation defect decays like r^{-3/2}.
  for (Wave w : {Wave::Pressure, Wave::Shear}) {
    const Eigen::Vector2d dir(0.6, 0.8);
    const double d1 = f.radiation_defect(20.0 * dir, w).norm(), d2 = f.radiation_defect(80.0 * dir, w).norm();
    const double rate = std::log(d2 / d1) / std::log(4.0);
    CHECK(std::abs(rate + 1.5) < 0.2);
  }
  // Far-field amplitude decays like r^{-1/2}, so the circle L2 norm levels off.
  const double l40 = f.l2_norm_on_circle(40.0), l160 = f.l2_norm_on_circle(160.0);
  CHECK(std::abs(l160 / l40 - 1.0) < 0.05);
}
