#include <algorithm>
#include <cmath>
#include <cstdio>

#include "elastocloak/harness.hpp"

namespace elastocloak::harness {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json fit_json(const LogLogFit& f) {
  return {{"accepted", f.accepted}, {"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared},
          {"reason", f.reason}};
}

nlohmann::json sweep_json(const SweepResult& s) {
  nlohmann::json j = {{"label", s.label}, {"n_max", s.n_max}, {"tail_ok", s.tail_ok}, {"fit", fit_json(s.fit)}};
  for (const auto& p : s.points)
    j["points"].push_back(
        {{"h", p.h}, {"distance", p.distance}, {"excluded", p.excluded}, {"flag", p.flag}, {"seconds", p.seconds}});
  return j;
}

void add_sweep_rows(Report& r, const SweepResult& s) {
  for (const auto& p : s.points)
    r.csv_rows.push_back({s.label, num(p.h), num(p.distance), p.excluded ? "1" : "0", std::to_string(s.n_max)});
}

void require_sweep_list(const std::vector<double>& hs) {
  if (hs.size() < 4) throw DomainError("h_list needs at least 4 values");
}

NearCloakParams with_h(NearCloakParams p, double h) {
  p.h = h;
  return p;
}

double preflight_condition(const HarnessConfig& c) {
  const LayeredDiskConfig base = uniform_disk(c.background);
  double worst = 0.0;
  for (int n = 0; n <= c.n_max; ++n) {
    const double cond = mode_condition(base, c.omega, n);
    if (cond > kNearResonanceCondition) throw NearResonanceError(n, cond);
    worst = std::max(worst, cond);
  }
  return worst;
}

}  // namespace

Report cmd_design(const HarnessConfig& c) {
  const IsotropicMedium& bg = c.background;
  if (bg.lambda.imag() != 0.0 || bg.mu.imag() != 0.0 || bg.rho.imag() != 0.0)
    throw DomainError("design needs a real background medium");
  Report r;
  r.command = "design";
  r.csv_header = {"r", "C_rrrr", "C_tttt", "C_rrtt", "C_ttrr", "C_rtrt", "C_trtr", "C_rttr", "C_trrt", "rho", "min_ellipticity"};
  std::vector<double> radii;
  for (double x : c.grid) {
    if (x <= 1.0 || x > 2.0) {
      r.warnings.push_back("radius " + num(x) + " outside (1, 2] skipped");
      continue;
    }
    radii.push_back(x);
  }
  bool elliptic = true;
  if (!radii.empty()) {
    const SingularityProfile prof = singularity_scan(bg, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const IdealCloakSample s = ideal_cloak_polar(bg, radii[i]);
      const PolarEntries e = polar_entries(s.polar);
      r.csv_rows.push_back({num(radii[i]), num(e.rrrr.real()), num(e.tttt.real()), num(e.rrtt.real()),
                            num(e.ttrr.real()), num(e.rtrt.real()), num(e.trtr.real()), num(e.rttr.real()),
                            num(e.trrt.real()), num(s.density.real()), num(prof.min_ellipticity[i])});
      elliptic = elliptic && prof.min_ellipticity[i] > 0.0;
    }
  }
  r.summary = {{"rows", radii.size()}};
  r.checks.push_back({"ellipticity_positive_inside", elliptic, 0.0, "Legendre constant > 0 at every row"});
  return r;
}

Report cmd_convergence(const HarnessConfig& c) {
  require_sweep_list(c.h_list);
  if (c.contents.empty()) throw DomainError("convergence needs at least one content medium");
  Report r;
  r.command = "convergence";
  r.csv_header = {"content", "h", "distance", "excluded", "n_max"};
  const double preflight = preflight_condition(c);
  r.summary["preflight_condition"] = preflight;
  const LayeredDiskConfig free_disk = uniform_disk(c.background);
  std::vector<SweepResult> sweeps;
  for (const auto& content : c.contents) {
    const auto near = [&](double h) {
      return build_near_cloak(with_h(c.params, h), content.medium, c.background).virtual_config;
    };
    sweeps.push_back(run_sweep(content.name, c.h_list, c.omega, c.n_max, near, [&](double) { return free_disk; }));
    add_sweep_rows(r, sweeps.back());
    r.summary["sweeps"].push_back(sweep_json(sweeps.back()));
    const auto& s = sweeps.back();
    r.checks.push_back({"fit_accepted:" + s.label, s.fit.accepted, s.fit.r_squared, s.fit.reason});
    r.checks.push_back({"slope_in_range:" + s.label, s.fit.accepted && s.fit.slope >= 1.6 && s.fit.slope <= 2.4,
                        s.fit.slope, "fitted slope in [1.6, 2.4]"});
    r.checks.push_back({"mode_tail:" + s.label, s.tail_ok, static_cast<double>(s.n_max),
                        "last two modes below 1% of the maximum"});
  }
  // Spread (max - min) / min across contents, per h.
  double worst_spread = 0.0;
  for (std::size_t k = 0; k < c.h_list.size(); ++k) {
    double lo = INFINITY, hi = 0.0;
    for (const auto& s : sweeps) {
      if (s.points[k].excluded) continue;
      lo = std::min(lo, s.points[k].distance);
      hi = std::max(hi, s.points[k].distance);
    }
    const double spread = (lo > 0.0 && std::isfinite(lo)) ? (hi - lo) / lo : 0.0;
    r.summary["content_spread"].push_back({{"h", c.h_list[k]}, {"spread", spread}});
    worst_spread = std::max(worst_spread, spread);
  }
  if (sweeps.size() > 1)
    r.checks.push_back({"content_spread", worst_spread <= 0.5, worst_spread, "relative spread across contents <= 50%"});
  return r;
}

Report cmd_lining(const HarnessConfig& c) {
  require_sweep_list(c.h_list);
  Report r;
  r.command = "lining";
  r.csv_header = {"series", "h", "distance", "excluded", "n_max"};
  const auto lossy = [&](NearCloakParams p) {
    return [&c, p](double h) { return build_near_cloak(with_h(p, h), c.content, c.background).virtual_config; };
  };
  const auto cavity = [&](double h) { return build_lining_config(h, c.background); };
  const SweepResult s = run_sweep("lossy_vs_cavity", c.h_list, c.omega, c.n_max, lossy(c.params), cavity);
  add_sweep_rows(r, s);
  r.summary["sweep"] = sweep_json(s);
  r.checks.push_back({"fit_accepted", s.fit.accepted, s.fit.r_squared, s.fit.reason});
  r.checks.push_back({"slope_at_least_1.6", s.fit.accepted && s.fit.slope >= 1.6, s.fit.slope, "fitted slope >= 1.6"});
  r.checks.push_back({"mode_tail", s.tail_ok, static_cast<double>(s.n_max), "last two modes below 1% of the maximum"});
  // Damping scan at the second h value: reported only.
  if (!c.beta_scan.empty()) {
    const double h = c.h_list[1];
    const NtDOperator reference = assemble_ntd(cavity(h), c.omega, s.n_max);
    for (double beta : c.beta_scan) {
      NearCloakParams p = c.params;
      p.beta = beta;
      const double d = ntd_distance(assemble_ntd(lossy(p)(h), c.omega, s.n_max), reference);
      r.summary["beta_scan"].push_back({{"beta", beta}, {"h", h}, {"distance", d}});
      r.csv_rows.push_back({"beta=" + num(beta), num(h), num(d), "0", std::to_string(s.n_max)});
    }
  }
  return r;
}

Report cmd_resonance(const HarnessConfig& c) {
  const ResonanceInputs& in = c.resonance;
  if (!(in.r0 > 0.0 && in.r0 < in.r1)) throw DomainError("resonance needs 0 < r0 < r1");
  ResonanceSearch search;
  search.t_max = in.t_max;
  search.root_index = in.root_index;
  const ResonanceResult res = find_resonant_densities(in.lambda, in.mu, in.r0, in.r1, in.omega, search);
  Report r;
  r.command = "resonance";
  r.csv_header = {"rho2_factor", "rho2", "condition"};
  const auto condition_at = [&](double factor) {
    return mode_condition(resonance_config(in.lambda, in.mu, in.r0, in.r1, res.rho1, res.rho2 * factor), in.omega, 0);
  };
  for (int k = -10; k <= 10; ++k) {
    const double f = 1.0 + 1e-4 * k;
    r.csv_rows.push_back({num(f), num(res.rho2 * f), num(condition_at(f))});
  }
  const double at_root = condition_at(1.0), off = condition_at(1.01);
  r.csv_rows.push_back({num(1.01), num(res.rho2 * 1.01), num(off)});
  int flagged_mode = -1;
  try {
    assemble_ntd(resonance_config(in.lambda, in.mu, in.r0, in.r1, res.rho1, res.rho2), in.omega, 0);
  } catch (const NearResonanceError& e) {
    flagged_mode = e.mode();
  }
  r.summary = {{"rho1", res.rho1},
               {"rho2", res.rho2},
               {"t1", res.t1},
               {"t2", res.t2},
               {"t_star", res.t_star},
               {"c", {{res.c(0).real(), res.c(0).imag()}, {res.c(1).real(), res.c(1).imag()}}},
               {"det_residual", res.det_residual},
               {"boundary_residual", res.boundary_residual},
               {"transmission_residual", res.transmission_residual},
               {"condition_at_rho2", at_root},
               {"condition_at_1.01_rho2", off},
               {"near_resonance_mode", flagged_mode}};
  const double spike = at_root / off;
  r.checks.push_back({"det_residual", res.det_residual < 1e-8, res.det_residual, "< 1e-8"});
  r.checks.push_back({"boundary_residual", res.boundary_residual < 1e-8, res.boundary_residual, "< 1e-8"});
  r.checks.push_back({"transmission_residual", res.transmission_residual < 1e-8, res.transmission_residual, "< 1e-8"});
  r.checks.push_back({"condition_spike", spike > 1e3, spike, "cond(rho2) / cond(1.01 rho2) > 1e3"});
  return r;
}

}  // namespace elastocloak::harness
