// One PASS/FAIL line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "elastocloak/cloak_design.hpp"
#include "elastocloak/harness.hpp"
#include "elastocloak/kernels.hpp"
#include "elastocloak/specfun.hpp"

using namespace elastocloak;
namespace hs = elastocloak::harness;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const hs::Check* find_check(const hs::Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

hs::HarnessConfig sweep_config() {
  return hs::config_from_json({{"h_list", {0.2, 0.1, 0.05, 0.025}},
                               {"omega", 1.0},
                               {"n_max", 16},
                               {"alpha", 1.0},
                               {"beta", 1.0},
                               {"gamma", 1.0},
                               {"delta", 0.0},
                               {"background", {{"lambda", 1.0}, {"mu", 1.0}, {"rho_re", 1.0}}},
                               {"contents",
                                {{{"name", "soft"}, {"lambda", 0.2}, {"mu", 0.2}, {"rho_re", 1.0}},
                                 {{"name", "stiff"}, {"lambda", 5.0}, {"mu", 5.0}, {"rho_re", 1.0}},
                                 {{"name", "heavy"}, {"lambda", 1.0}, {"mu", 1.0}, {"rho_re", 4.0}}}}});
}

void convergence_criteria() {
  const auto start = std::chrono::steady_clock::now();
  const hs::Report r = hs::cmd_convergence(sweep_config());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = seconds < 60.0;
  std::string detail;
  for (const auto& sweep : r.summary.at("sweeps")) {
    const std::string label = sweep.at("label");
    const auto& fit = sweep.at("fit");
    const double slope = fit.at("slope"), r2 = fit.at("r_squared");
    ok = ok && fit.at("accepted").get<bool>() && slope >= 1.6 && slope <= 2.4 && r2 >= 0.98;
    detail += label + " slope=" + fmt("%.3f", slope) + " R2=" + fmt("%.4f", r2) + "; ";
  }
  detail += "runtime=" + fmt("%.1f", seconds) + " s (limit 60)";
  report(1, "convergence_rate", ok, detail);

  const hs::Check* spread = find_check(r, "content_spread");
  report(2, "content_independence", spread && spread->passed,
         "max spread=" + fmt("%.3f", spread ? spread->value : NAN) + " (limit 0.5)");
}

void lining_criterion() {
  const hs::Report r = hs::cmd_lining(sweep_config());
  const auto& fit = r.summary.at("sweep").at("fit");
  const double slope = fit.at("slope"), r2 = fit.at("r_squared");
  const bool ok = fit.at("accepted").get<bool>() && slope >= 1.6;
  report(3, "traction_free_lining", ok, "slope=" + fmt("%.3f", slope) + " R2=" + fmt("%.4f", r2) + " (slope >= 1.6)");
}

void resonance_criterion() {
  const hs::Report r = hs::cmd_resonance(hs::config_from_json(nlohmann::json::object()));
  bool ok = true;
  std::string detail;
  for (const char* name : {"det_residual", "boundary_residual", "transmission_residual", "condition_spike"}) {
    const hs::Check* c = find_check(r, name);
    ok = ok && c && c->passed;
    detail += std::string(name) + "=" + fmt("%.3e", c ? c->value : NAN) + " ";
  }
  report(4, "resonance_construction", ok, detail + "(residuals < 1e-8, spike > 1e3)");
}

// Fixed traction coefficients in the rescaled variable x/h, so W|_{r=2} should scale like h.
void cavity_criterion() {
  const IsotropicMedium m{1.0, 1.0, 1.0};
  std::map<int, Eigen::Vector2cd> traction;
  for (int n = -3; n <= 3; ++n)
    traction[n] = Eigen::Vector2cd(cplx(1.0 / (1 + n * n), 0.2 * n), cplx(0.5, -0.3 / (1 + std::abs(n))));
  std::vector<double> hv{0.2, 0.1, 0.05, 0.025}, norms;
  for (double h : hv) norms.push_back(solve_exterior_cavity(h, traction, 1.0, m).l2_norm_on_circle(2.0));
  const hs::LogLogFit fit = hs::fit_loglog(hv, norms);
  report(5, "exterior_cavity_scaling", fit.accepted && fit.slope >= 0.7 && fit.slope <= 1.3,
         "slope=" + fmt("%.4f", fit.slope) + " R2=" + fmt("%.5f", fit.r_squared) + " (in [0.7, 1.3])");
}

void energy_criterion() {
  const hs::HarnessConfig c = hs::config_from_json(nlohmann::json::object());
  const NearCloak cloak = build_near_cloak(c.params, c.content, c.background);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  const int n_max = 8;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Eigen::Vector2cd> psi;
    for (int n = -n_max; n <= n_max; ++n) {
      const double decay = 1.0 / (1.0 + n * n);
      psi.emplace_back(decay * cplx(g(rng), g(rng)), decay * cplx(g(rng), g(rng)));
    }
    const EnergyReport e = energy_identity_check(cloak.virtual_config, c.background, c.omega, psi);
    worst = std::max(worst, e.residual);
  }
  report(6, "energy_identity", worst < 1e-6, "max relative residual=" + fmt("%.3e", worst) + " over 10 tractions (limit 1e-6)");
}

void kernel_criterion() {
  const hs::Report r = hs::cmd_kernelcheck(hs::config_from_json({{"omega", 1.0}}));
  bool ok = true;
  std::string detail;
  for (const char* name : {"reciprocity", "navier_residual", "series_vs_closed_3d", "asymptotic_gap"}) {
    const hs::Check* c = find_check(r, name);
    ok = ok && c && c->passed;
    detail += std::string(name) + "=" + fmt("%.3e", c ? c->value : NAN) + " ";
  }
  report(7, "kernel_suite", ok, detail + "(1e-12, 1e-6, 1e-10, spread <= 2)");
}

void pushforward_criterion() {
  const IsotropicMedium unit{1.0, 1.0, 1.0};
  const StiffnessTensor iso = iso_stiffness(unit, 2);
  const RadialMap blowup = blowup_F(2);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> rad(1.001, 2.0), ang(0.0, 2.0 * M_PI);

  double major = 0.0, closed_gap = 0.0;
  for (int s = 0; s < 100; ++s) {
    const double r = rad(rng), t = ang(rng);
    Eigen::VectorXd y(2);
    y << r * std::cos(t), r * std::sin(t);
    const StiffnessTensor pushed = pushforward_stiffness(iso, blowup, y);
    major = std::max(major, symmetry_report(pushed, 0.0).major_violation);
    const StiffnessTensor polar = change_frame(pushed, polar_frame(y));
    const StiffnessTensor closed = ideal_cloak_polar(unit, r).polar;
    for (std::size_t i = 0; i < closed.entries().size(); ++i)
      closed_gap = std::max(closed_gap, std::abs(polar.entries()[i] - closed.entries()[i]) / closed.max_abs());
  }

  Eigen::VectorXd y15(2);
  y15 << 1.5, 0.0;
  const double minor = symmetry_report(pushforward_stiffness(iso, blowup, y15), 0.0).minor_violation;

  Eigen::VectorXd q(2);
  q << 0.4, -1.1;
  const StiffnessTensor same = pushforward_stiffness(iso, identity_map(2), q);
  double identity_gap = 0.0;
  for (std::size_t i = 0; i < iso.entries().size(); ++i)
    identity_gap = std::max(identity_gap, std::abs(same.entries()[i] - iso.entries()[i]));

  const RadialMap near = regularized_Fh(0.1, 2);
  std::uniform_real_distribution<double> inner(0.05, 1.95);
  double min_elliptic = INFINITY;
  for (int s = 0; s < 100; ++s) {
    double r = inner(rng);
    if (std::abs(r - 1.0) < 1e-6) r += 1e-3;  // joint image
    const double t = ang(rng);
    Eigen::VectorXd y(2);
    y << r * std::cos(t), r * std::sin(t);
    min_elliptic = std::min(min_elliptic, legendre_constant(pushforward_stiffness(iso, near, y)));
  }

  const bool ok = major == 0.0 && minor > 1e-3 && closed_gap < 1e-12 && identity_gap == 0.0 && min_elliptic > 0.0;
  report(8, "pushforward_suite", ok,
         "major=" + fmt("%.1e", major) + " minor@1.5=" + fmt("%.3f", minor) + " closed_vs_numeric=" +
             fmt("%.2e", closed_gap) + " identity=" + fmt("%.1e", identity_gap) + " min_ellipticity=" +
             fmt("%.3e", min_elliptic));
}

// Homogeneous disk NtD block from Bessel functions: pressure potential J_n(k_p r) and shear
// potential J_n(k_s r), u = grad phi + curl(psi e_z), displacement = U T^{-1}.
Eigen::Matrix2cd homogeneous_block(const IsotropicMedium& m, double omega, int n, double radius) {
  using namespace specfun;
  const cplx lam = m.lambda, mu = m.mu;
  const cplx kp = omega * std::sqrt(m.rho / (lam + 2.0 * mu)), ks = omega * std::sqrt(m.rho / mu);
  const cplx in(0.0, n);
  const double r = radius;
  const cplx p = bessel_j(n, kp * r), dp = kp * bessel_j_prime(n, kp * r), ddp = kp * kp * bessel_j_second(n, kp * r);
  const cplx s = bessel_j(n, ks * r), ds = ks * bessel_j_prime(n, ks * r), dds = ks * ks * bessel_j_second(n, ks * r);
  Eigen::Matrix2cd u, t;
  u << dp, in * s / r, in * p / r, -ds;
  t << -lam * kp * kp * p + 2.0 * mu * ddp, 2.0 * mu * in * (ds / r - s / (r * r)),
      2.0 * mu * in * (dp / r - p / (r * r)), mu * (-dds + ds / r + in * in * s / (r * r));
  return u * t.inverse();
}

void homogeneous_criterion() {
  const IsotropicMedium m{1.3, 0.8, 1.1};
  LayeredDiskConfig layers;
  for (double radius : {2.0, 1.4, 0.6, 0.15}) layers.layers.push_back({radius, m});
  const double omega = 1.0;
  const NtDOperator op = assemble_ntd(layers, omega, 16);
  double worst = 0.0;
  for (int n = 0; n <= 16; ++n) {
    const Eigen::Matrix2cd exact = homogeneous_block(m, omega, n, 2.0);
    worst = std::max(worst, (op.blocks[n] - exact).norm() / std::max(1.0, exact.norm()));
  }
  report(9, "homogeneous_reduction", worst < 1e-10, "max block deviation=" + fmt("%.3e", worst) + " over n=0..16 (limit 1e-10)");
}

cplx j0_series(cplx z) {
  cplx term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= -0.25 * z * z / (static_cast<double>(k) * k);
    sum += term;
  }
  return sum;
}

void specfun_criterion() {
  using namespace specfun;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logr(std::log(1e-3), std::log(50.0)), arg(-M_PI, M_PI);
  double wronskian = 0.0, recurrence = 0.0;
  int points = 0;
  while (points < 1000) {
    const cplx z = std::polar(std::exp(logr(rng)), arg(rng));
    if (std::abs(z.imag()) > 5.0) continue;
    ++points;
    for (int n : {0, 1, 3, 7}) {
      const CylEval e = cyl_eval(n, z);
      const cplx w = 2.0 / (M_PI * z);
      const double scale = std::max({std::abs(e.J * e.Yp), std::abs(e.Jp * e.Y), std::abs(w)});
      wronskian = std::max(wronskian, std::abs(e.J * e.Yp - e.Jp * e.Y - w) / scale);
    }
    for (int n : {1, 2, 5, 9}) {
      const cplx jm = bessel_j(n - 1, z), j = bessel_j(n, z), jp = bessel_j(n + 1, z);
      const double scale = std::max({std::abs(jm), std::abs(jp), std::abs(2.0 * n / z * j)});
      recurrence = std::max(recurrence, std::abs(jm + jp - 2.0 * n / z * j) / scale);
    }
  }
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (j0_series(mid).real() > 0.0 ? lo : hi) = mid;
  }
  const double zero_gap = std::abs(bessel_j_zero(0, 1) - 0.5 * (lo + hi));
  const bool ok = wronskian < 1e-10 && recurrence < 1e-10 && zero_gap < 1e-12;
  report(10, "special_functions", ok,
         "wronskian=" + fmt("%.2e", wronskian) + " recurrence=" + fmt("%.2e", recurrence) + " j0_zero=" +
             fmt("%.1e", zero_gap) + " (1e-10, 1e-10, 1e-12)");
}

}  // namespace

int main() {
  const auto guard = [](int id, const char* name, void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, name, false, std::string("exception: ") + e.what());
    }
  };
  guard(1, "convergence_rate", convergence_criteria);
  guard(3, "traction_free_lining", lining_criterion);
  guard(4, "resonance_construction", resonance_criterion);
  guard(5, "exterior_cavity_scaling", cavity_criterion);
  guard(6, "energy_identity", energy_criterion);
  guard(7, "kernel_suite", kernel_criterion);
  guard(8, "pushforward_suite", pushforward_criterion);
  guard(9, "homogeneous_reduction", homogeneous_criterion);
  guard(10, "special_functions", specfun_criterion);
  std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
  return failures ? 1 : 0;
}
