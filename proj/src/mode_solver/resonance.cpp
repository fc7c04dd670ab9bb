#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "elastocloak/mode_solver.hpp"
#include "elastocloak/specfun.hpp"

namespace elastocloak {

namespace {

double j0(double t) { return specfun::bessel_j(0, t).real(); }
double j0p(double t) { return specfun::bessel_j_prime(0, t).real(); }
double j0pp(double t) { return specfun::bessel_j_second(0, t).real(); }

// Roots of `fn` on (lo, hi] found by sign changes on a uniform scan, refined by TOMS 748.
template <class F>
std::vector<double> scan_roots(F fn, double lo, double hi, double step) {
  std::vector<double> roots;
  double a = lo, fa = fn(a);
  while (a < hi) {
    const double b = std::min(a + step, hi);
    const double fb = fn(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if (fa * fb < 0.0) {
      std::uintmax_t iters = 100;
      auto r = boost::math::tools::toms748_solve(fn, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
      roots.push_back(0.5 * (r.first + r.second));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace

LayeredDiskConfig resonance_config(double lambda, double mu, double r0, double r1, double rho1, double rho2) {
  LayeredDiskConfig c;
  c.layers.push_back({r1, {lambda, mu, rho1}});
  c.layers.push_back({r0, {lambda, mu, rho2}});
  c.validate();
  return c;
}

ResonanceResult find_resonant_densities(double lambda, double mu, double r0, double r1, double omega,
                                        const ResonanceSearch& search) {
  if (!(r0 > 0.0 && r0 < r1)) throw DomainError("resonance construction needs 0 < r0 < r1");
  if (!(omega > 0.0)) throw DomainError("resonance construction needs omega > 0");
  if (!(mu > 0.0 && lambda + 2.0 * mu > 0.0)) throw DomainError("resonance construction needs a regular medium");
  const double modulus = lambda + 2.0 * mu;
  constexpr double kStep = 0.02;

  auto f = [&](double t) { return 2.0 * mu * j0pp(t) - lambda * j0(t); };
  const auto f_roots = scan_roots(f, kStep, search.t_max, kStep);
  if (static_cast<int>(f_roots.size()) < search.root_index)
    throw Error(ErrorKind::SearchWindow, "no root of 2 mu J0'' - lambda J0 in (0, " + std::to_string(search.t_max) +
                                             "]; enlarge t_max and retry");
  ResonanceResult out;
  out.t_star = f_roots[search.root_index - 1];
  // k_p r1 = t*  with  k_p = omega sqrt(rho / (lambda + 2 mu)).
  auto rho_for = [&](double t, double r) { return modulus * std::pow(t / (omega * r), 2); };
  out.rho1 = rho_for(out.t_star, r1);
  out.t1 = out.t_star * r0 / r1;

  const double t1 = out.t1;
  const bool flat = std::abs(j0pp(t1)) < 1e-14;
  const double g1 = flat ? 0.0 : j0p(t1) / (t1 * j0pp(t1));
  auto G = [&](double t) { return flat ? j0pp(t) : j0p(t) - g1 * t * j0pp(t); };
  double t2 = -1.0;
  for (double t : scan_roots(G, kStep, search.t_max, kStep)) {
    if (std::abs(t - t1) > 1e-6 * std::max(1.0, t1)) {
      t2 = t;
      break;
    }
  }
  if (t2 < 0.0)
    throw Error(ErrorKind::SearchWindow, "no partner root t2 != t1 in (0, " + std::to_string(search.t_max) +
                                             "]; enlarge t_max and retry");
  out.t2 = t2;
  out.rho2 = rho_for(t2, r0);

  // Rows: u continuity and du/dr continuity at r0 (common factors removed).
  Eigen::Matrix2cd m;
  m << t1 * j0p(t1), -t2 * j0p(t2), t1 * t1 * j0pp(t1), -t2 * t2 * j0pp(t2);
  Eigen::Matrix2cd normalized = m;
  for (int i = 0; i < 2; ++i) normalized.row(i) /= normalized.row(i).norm();
  out.det_residual = std::abs(normalized.determinant());
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(normalized, Eigen::ComputeFullV);
  out.c = svd.matrixV().col(1);

  // Verification on the constructed fields u_j = c_j k_j J0'(k_j r) r-hat.
  const double k1 = out.t_star / r1, k2 = t2 / r0;
  const double tr = 2.0 * mu * j0pp(out.t_star) - lambda * j0(out.t_star);
  out.boundary_residual = std::abs(tr) / (2.0 * mu * std::abs(j0pp(out.t_star)) + std::abs(lambda * j0(out.t_star)));
  const cplx u1 = out.c(0) * k1 * j0p(t1), u2 = out.c(1) * k2 * j0p(t2);
  const cplx d1 = out.c(0) * k1 * k1 * j0pp(t1), d2 = out.c(1) * k2 * k2 * j0pp(t2);
  const double scale = std::abs(u1) + std::abs(u2) + (std::abs(d1) + std::abs(d2)) * r0;
  out.transmission_residual = (std::abs(u1 - u2) + std::abs(d1 - d2) * r0) / scale;
  if (out.det_residual > 1e-8) throw Error(ErrorKind::SearchWindow, "determinant did not vanish at the partner root");
  return out;
}

EnergyReport energy_identity_check(const LayeredDiskConfig& config, const IsotropicMedium& background, double omega,
                                   const std::vector<Eigen::Vector2cd>& psi) {
  if (psi.size() % 2 == 0) throw DomainError("psi must list modes -n_max..n_max");
  for (const auto& l : config.layers)
    if (l.medium.lambda.imag() != 0.0 || l.medium.mu.imag() != 0.0)
      throw DomainError("energy identity check needs real Lame constants");
  const int n_max = static_cast<int>(psi.size() / 2);
  const double R = config.outer_radius();
  const LayeredDiskConfig free_disk = uniform_disk(background, R);
  using Gauss = boost::math::quadrature::gauss<double, 40>;

  double lhs = 0.0;
  cplx boundary = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    const Eigen::Vector2cd& t = psi[n + n_max];
    if (t.isZero(0.0)) continue;
    const ModeSolution sol = ModeSystem(config, omega, n).solve(t);
    const ModeSolution ref = ModeSystem(free_disk, omega, n).solve(t);
    for (std::size_t i = 0; i < config.layers.size(); ++i) {
      const double loss = config.layers[i].medium.rho.imag();
      if (loss == 0.0) continue;
      const double a = config.layer_inner_radius(i), b = config.layers[i].outer_radius;
      const double integral = Gauss::integrate(
          [&](double r) {
            const PolarFields f = sol.fields_at(r);
            return (std::norm(f.u_r) + std::norm(f.u_t)) * r;
          },
          a, b);
      lhs += omega * omega * loss * 2.0 * M_PI * integral;
    }
    const PolarFields u = sol.fields_at(R);
    const PolarFields u0 = ref.fields_at(R);
    boundary += t(0) * std::conj(u.u_r - u0.u_r) + t(1) * std::conj(u.u_t - u0.u_t);
  }
  EnergyReport rep;
  rep.lhs = lhs;
  rep.rhs = -(2.0 * M_PI * R * boundary).imag();
  const double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.residual = scale > 0.0 ? std::abs(rep.lhs - rep.rhs) / scale : 0.0;
  return rep;
}

}  // namespace elastocloak
