#include <doctest.h>

#include <cmath>

#include "elastocloak/errors.hpp"
#include "elastocloak/tensor.hpp"

using namespace elastocloak;

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

Eigen::MatrixXd rotation2(double t) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

}  // namespace

TEST_CASE("isotropic tensor entries") {
  const IsotropicMedium m{1.3, 0.7, 1.0};
  for (int dim : {2, 3}) {
    const StiffnessTensor c = iso_stiffness(m, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) {
            const double expected =
                1.3 * delta(i, j) * delta(k, l) + 0.7 * (delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k));
            CHECK(std::abs(c(i, j, k, l) - expected) < 1e-15);
          }
    CHECK(c.major_symmetric());
    CHECK(c.minor_symmetric());
    const SymmetryReport rep = symmetry_report(c, 0.0);
    CHECK(rep.major);
    CHECK(rep.minor);
  }
}

TEST_CASE("Hooke's law for a symmetric strain") {
  const IsotropicMedium m{2.0, 0.5, 1.0};
  Eigen::MatrixXcd a(2, 2);
  a << 0.3, 0.1, 0.1, -0.2;
  const Eigen::MatrixXcd sigma = apply_stiffness(iso_stiffness(m, 2), a);
  const Eigen::MatrixXcd expected = 2.0 * a.trace() * Eigen::MatrixXcd::Identity(2, 2) + 2.0 * 0.5 * a;
  CHECK((sigma - expected).norm() < 1e-15);
  CHECK_THROWS_AS(apply_stiffness(iso_stiffness(m, 2), Eigen::MatrixXcd::Zero(3, 3)), DomainError);
}

TEST_CASE("Legendre constant of an isotropic tensor is min(2 mu, N lambda + 2 mu)") {
  CHECK(std::abs(legendre_constant(iso_stiffness({1.0, 1.0, 1.0}, 2)) - 2.0) < 1e-13);
  CHECK(std::abs(legendre_constant(iso_stiffness({-0.5, 1.0, 1.0}, 2)) - 1.0) < 1e-13);
  CHECK(std::abs(legendre_constant(iso_stiffness({-0.5, 1.0, 1.0}, 3)) - 0.5) < 1e-13);
  const LegendreEstimate est = check_legendre(iso_stiffness({1.0, 1.0, 1.0}, 3), 200);
  CHECK(est.positive);
  CHECK(est.c0 >= 2.0 - 1e-12);
  CHECK(legendre_constant(iso_stiffness({-2.0, 1.0, 1.0}, 2)) < 0.0);
  CHECK_THROWS_AS(legendre_constant(iso_stiffness({1.0, cplx(1.0, 0.5), 1.0}, 2)), DomainError);
}

TEST_CASE("Voigt matrix") {
  const Eigen::MatrixXcd v = voigt_matrix(iso_stiffness({1.0, 2.0, 1.0}, 2));
  Eigen::MatrixXcd expected(3, 3);
  expected << 5.0, 1.0, 0.0, 1.0, 5.0, 0.0, 0.0, 0.0, 2.0;
  CHECK((v - expected).norm() < 1e-15);
  CHECK(voigt_matrix(iso_stiffness({1.0, 2.0, 1.0}, 3)).rows() == 6);
  StiffnessTensor broken = iso_stiffness({1.0, 1.0, 1.0}, 2);
  broken(0, 1, 0, 0) = 0.5;
  CHECK_THROWS_AS(voigt_matrix(broken), DomainError);
}

TEST_CASE("isotropic tensors are frame invariant") {
  const StiffnessTensor c = iso_stiffness({1.0, 3.0, 1.0}, 2);
  const StiffnessTensor rotated = change_frame(c, rotation2(0.7));
  for (std::size_t i = 0; i < c.entries().size(); ++i) CHECK(std::abs(c.entries()[i] - rotated.entries()[i]) < 1e-14);
  StiffnessTensor general(2);
  general(0, 0, 0, 0) = 2.0;
  general(0, 1, 1, 0) = 1.0;
  const StiffnessTensor back = change_frame(change_frame(general, rotation2(0.4)), rotation2(0.4).transpose());
  for (std::size_t i = 0; i < general.entries().size(); ++i)
    CHECK(std::abs(general.entries()[i] - back.entries()[i]) < 1e-14);
}

TEST_CASE("JSON round trip") {
  StiffnessTensor c = iso_stiffness({1.0, cplx(2.0, 0.25), 1.0}, 3);
  c(0, 1, 2, 0) = cplx(0.1, -0.2);
  const StiffnessTensor back = tensor_from_json(tensor_to_json(c));
  CHECK(back.dim() == 3);
  CHECK(back.entries() == c.entries());
  CHECK_THROWS_AS(tensor_from_json(nlohmann::json{{"dim", 2}}), Error);
}

TEST_CASE("symmetric matrix storage") {
  SymmetricMatrix s(3);
  s.set(0, 2, 4.0);
  CHECK(s.get(2, 0) == cplx(4.0));
  Eigen::MatrixXcd a(2, 2);
  a << 1.0, 2.0, 0.0, 3.0;
  const SymmetricMatrix p = SymmetricMatrix::from_matrix(a);
  CHECK(p.get(0, 1) == cplx(1.0));
  CHECK((p.dense() - p.dense().transpose()).norm() == 0.0);
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(StiffnessTensor(4), DomainError);
  CHECK_THROWS_AS(iso_stiffness({1.0, 1.0, 1.0}, 1), DomainError);
  CHECK(IsotropicMedium{1.0, 1.0, 1.0}.is_regular_real(2));
  CHECK_FALSE(IsotropicMedium{-1.5, 1.0, 1.0}.is_regular_real(2));
  CHECK_FALSE(IsotropicMedium{1.0, 1.0, cplx(1.0, 0.1)}.is_regular_real(2));
}
