#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastocloak/cloak_design.hpp"
#include "elastocloak/mode_solver.hpp"

namespace elastocloak::harness {

inline constexpr const char* kVersion = "0.1.0";

struct NamedMedium {
  std::string name;
  IsotropicMedium medium;
};

struct ResonanceInputs {
  double lambda = 1.0, mu = 1.0, r0 = 0.5, r1 = 1.0, omega = 1.0;
  double t_max = 40.0;
  int root_index = 1;
};

struct KernelCheckInputs {
  double omega = 1.0;
  IsotropicMedium medium{1.0, 1.0, 1.0};
  int reciprocity_pairs = 1000;
  int quadrature_points = 64;
  bool negate_eta = false;  // fault injection for the asymptotic-gap suite
};

struct HarnessConfig {
  NearCloakParams params;
  IsotropicMedium background{1.0, 1.0, 1.0};
  IsotropicMedium content{1.0, 1.0, 1.0};
  std::vector<NamedMedium> contents;  // convergence sweep; defaults to soft / stiff / heavy
  double omega = 1.0;
  int n_max = 16;
  std::vector<double> h_list{0.2, 0.1, 0.05, 0.025};
  std::vector<double> grid;  // design radii
  std::vector<double> beta_scan;
  ResonanceInputs resonance;
  KernelCheckInputs kernelcheck;
  std::uint64_t seed = 1;
  nlohmann::json source;  // the parsed document, for hashing

  void validate() const;
};

// Missing keys take defaults; unknown keys are ignored.
HarnessConfig config_from_json(const nlohmann::json& j);
HarnessConfig load_config(const std::string& path);
// FNV-1a 64 of the canonical dump of `source` plus the effective n_max and seed, as 16 hex digits.
std::string config_hash(const HarnessConfig& c);

struct LogLogFit {
  bool accepted = false;
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
  std::string reason;  // why a fit was rejected
};
inline constexpr double kMinRSquared = 0.98;
// Least squares of log y on log x; rejects non-positive data as "degenerate data" and R^2 < 0.98.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  std::string detail;
};

// Output of one command: CSV body and a JSON summary.
struct Report {
  std::string command;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  nlohmann::json summary;
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  bool passed() const;
  // First line: "# elastocloak <version> config=<hash>".
  std::string csv(const std::string& hash) const;
  nlohmann::json json(const std::string& hash) const;
};

struct SweepPoint {
  double h = 0.0;
  double distance = 0.0;
  bool excluded = false;  // near-resonant, left out of the fit
  std::string flag;
  std::vector<double> mode_distances;
  double seconds = 0.0;
};
struct SweepResult {
  std::string label;
  int n_max = 0;
  std::vector<SweepPoint> points;
  LogLogFit fit;
  bool tail_ok = false;
};

// Per h, the NtD operator of `candidate(h)` against `reference(h)`. Raises n_max in steps of 8
// (up to 64) until the last two modes carry < 1% of the maximal per-mode distance.
SweepResult run_sweep(const std::string& label, const std::vector<double>& hs, double omega, int n_max,
                      const std::function<LayeredDiskConfig(double)>& candidate,
                      const std::function<LayeredDiskConfig(double)>& reference);

Report cmd_design(const HarnessConfig& c);
Report cmd_convergence(const HarnessConfig& c);
Report cmd_lining(const HarnessConfig& c);
Report cmd_resonance(const HarnessConfig& c);
Report cmd_kernelcheck(const HarnessConfig& c);

Report run_command(const std::string& name, const HarnessConfig& c);
// Writes <out_dir>/<command>.csv and <out_dir>/<command>.json; `hash` is config_hash of the run.
void write_report(const Report& r, const std::string& hash, const std::string& out_dir);

}  // namespace elastocloak::harness
