#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "elastocloak/harness.hpp"

namespace elastocloak::harness {

namespace {

IsotropicMedium medium_from_json(const nlohmann::json& j, const IsotropicMedium& fallback) {
  IsotropicMedium m = fallback;
  m.lambda = j.value("lambda", m.lambda.real());
  m.mu = j.value("mu", m.mu.real());
  m.rho = cplx(j.value("rho_re", m.rho.real()), j.value("rho_im", m.rho.imag()));
  return m;
}

std::vector<double> number_list(const nlohmann::json& j, const char* key, std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<std::vector<double>>();
}

std::vector<NamedMedium> default_contents() {
  return {{"soft", {0.2, 0.2, 1.0}}, {"stiff", {5.0, 5.0, 1.0}}, {"heavy", {1.0, 1.0, 4.0}}};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("config: " + what);
}

std::vector<double> log_vector(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) out.push_back(std::log(x));
  return out;
}

}  // namespace

void HarnessConfig::validate() const {
  params.validate();
  require(omega >= 0.0 && std::isfinite(omega), "omega must be finite and non-negative");
  require(n_max >= 0 && n_max <= 256, "n_max must lie in [0, 256]");
  for (double h : h_list) require(h > 0.0 && h < 0.5, "h_list entries must lie in (0, 1/2)");
  for (double b : beta_scan) require(b > 0.0, "beta_scan entries must be positive");
  require(resonance.r0 > 0.0 && resonance.r0 < resonance.r1, "resonance needs 0 < r0 < r1");
  require(resonance.omega > 0.0, "resonance omega must be positive");
  require(kernelcheck.omega >= 0.0, "kernelcheck omega must be non-negative");
  require(kernelcheck.reciprocity_pairs > 0, "kernelcheck pairs must be positive");
  require(kernelcheck.quadrature_points >= 8 && kernelcheck.quadrature_points % 2 == 0,
          "kernelcheck quadrature_points must be even and >= 8");
}

HarnessConfig config_from_json(const nlohmann::json& j) {
  HarnessConfig c;
  try {
    if (!j.is_object()) throw DomainError("config: top level must be an object");
    c.source = j;
    c.params.h = j.value("h", c.params.h);
    c.params.alpha = j.value("alpha", c.params.alpha);
    c.params.beta = j.value("beta", c.params.beta);
    c.params.gamma = j.value("gamma", c.params.gamma);
    c.params.delta = j.value("delta", c.params.delta);
    if (j.contains("background")) c.background = medium_from_json(j.at("background"), c.background);
    if (j.contains("content")) c.content = medium_from_json(j.at("content"), c.content);
    if (j.contains("contents")) {
      for (const auto& e : j.at("contents"))
        c.contents.push_back({e.value("name", "content" + std::to_string(c.contents.size())),
                              medium_from_json(e, c.background)});
    } else {
      c.contents = default_contents();
    }
    c.omega = j.value("omega", c.omega);
    c.n_max = j.value("n_max", c.n_max);
    c.h_list = number_list(j, "h_list", c.h_list);
    c.grid = number_list(j, "grid", {1.001, 1.01, 1.1, 1.25, 1.5, 1.75, 2.0});
    c.beta_scan = number_list(j, "beta_scan", {});
    c.seed = j.value("seed", c.seed);
    if (j.contains("resonance")) {
      const auto& r = j.at("resonance");
      c.resonance.lambda = r.value("lambda", c.resonance.lambda);
      c.resonance.mu = r.value("mu", c.resonance.mu);
      c.resonance.r0 = r.value("r0", c.resonance.r0);
      c.resonance.r1 = r.value("r1", c.resonance.r1);
      c.resonance.omega = r.value("omega", c.resonance.omega);
      c.resonance.t_max = r.value("t_max", c.resonance.t_max);
      c.resonance.root_index = r.value("root_index", c.resonance.root_index);
    }
    c.kernelcheck.omega = c.omega;
    c.kernelcheck.medium = c.background;
    if (j.contains("kernelcheck")) {
      const auto& k = j.at("kernelcheck");
      c.kernelcheck.omega = k.value("omega", c.kernelcheck.omega);
      c.kernelcheck.medium = medium_from_json(k, c.kernelcheck.medium);
      c.kernelcheck.reciprocity_pairs = k.value("pairs", c.kernelcheck.reciprocity_pairs);
      c.kernelcheck.quadrature_points = k.value("quadrature_points", c.kernelcheck.quadrature_points);
      c.kernelcheck.negate_eta = k.value("negate_eta", false);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

HarnessConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

std::string config_hash(const HarnessConfig& c) {
  const std::string text = c.source.dump() + "|n_max=" + std::to_string(c.n_max) + "|seed=" + std::to_string(c.seed);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  LogLogFit fit;
  if (x.size() != y.size() || x.size() < 2) {
    fit.reason = "degenerate data: need at least two points";
    return fit;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i])) {
      fit.reason = "degenerate data: non-positive or non-finite values";
      return fit;
    }
  const std::vector<double> lx = log_vector(x), ly = log_vector(y);
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    fit.reason = "degenerate data: identical abscissae";
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : sxy * sxy / (sxx * syy);
  if (fit.r_squared < kMinRSquared) {
    fit.reason = "poor fit: R^2 below 0.98";
    return fit;
  }
  fit.accepted = true;
  return fit;
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string Report::csv(const std::string& hash) const {
  std::ostringstream out;
  out << "# elastocloak " << kVersion << " command=" << command << " config=" << hash << '\n';
  for (std::size_t i = 0; i < csv_header.size(); ++i) out << (i ? "," : "") << csv_header[i];
  out << '\n';
  for (const auto& row : csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

nlohmann::json Report::json(const std::string& hash) const {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["config_hash"] = hash;
  j["summary"] = summary;
  j["passed"] = passed();
  j["warnings"] = warnings;
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"detail", c.detail}});
  return j;
}

SweepResult run_sweep(const std::string& label, const std::vector<double>& hs, double omega, int n_max,
                      const std::function<LayeredDiskConfig(double)>& candidate,
                      const std::function<LayeredDiskConfig(double)>& reference) {
  if (hs.size() < 2) throw DomainError("sweep needs at least two h values");
  for (std::size_t i = 1; i < hs.size(); ++i)
    if (!(hs[i] < hs[i - 1])) throw DomainError("h values must be strictly decreasing");
  constexpr int kMaxModes = 64;
  SweepResult out;
  out.label = label;
  for (int modes = n_max;; modes += 8) {
    out.points.clear();
    out.n_max = modes;
    double worst_tail = 0.0;
    for (double h : hs) {
      SweepPoint p;
      p.h = h;
      const auto start = std::chrono::steady_clock::now();
      try {
        const NtDOperator a = assemble_ntd(candidate(h), omega, modes);
        const NtDOperator b = assemble_ntd(reference(h), omega, modes);
        p.mode_distances = ntd_mode_distances(a, b);
        for (double d : p.mode_distances) p.distance = std::max(p.distance, d);
        if (p.distance > 0.0) {
          // Fewer than two modes cannot show a decaying tail.
          const double tail = modes < 2 ? p.distance : std::max(p.mode_distances[modes], p.mode_distances[modes - 1]);
          worst_tail = std::max(worst_tail, tail / p.distance);
        }
      } catch (const NearResonanceError& e) {
        p.excluded = true;
        p.flag = e.what();
      }
      p.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out.points.push_back(p);
    }
    out.tail_ok = worst_tail < 0.01;
    if (out.tail_ok || modes + 8 > kMaxModes) break;
  }
  std::vector<double> x, y;
  for (const auto& p : out.points)
    if (!p.excluded) {
      x.push_back(p.h);
      y.push_back(p.distance);
    }
  out.fit = fit_loglog(x, y);
  return out;
}

Report run_command(const std::string& name, const HarnessConfig& c) {
  if (name == "design") return cmd_design(c);
  if (name == "convergence") return cmd_convergence(c);
  if (name == "lining") return cmd_lining(c);
  if (name == "resonance") return cmd_resonance(c);
  if (name == "kernelcheck") return cmd_kernelcheck(c);
  throw DomainError("unknown command '" + name + "'");
}

void write_report(const Report& r, const std::string& hash, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir + ": " + ec.message());
  const std::filesystem::path base = std::filesystem::path(out_dir) / r.command;
  std::ofstream csv(base.string() + ".csv", std::ios::binary);
  csv << r.csv(hash);
  std::ofstream js(base.string() + ".json", std::ios::binary);
  js << r.json(hash).dump(2) << '\n';
  if (!csv || !js) throw Error(ErrorKind::Io, "failed writing reports to " + out_dir);
}

}  // namespace elastocloak::harness
