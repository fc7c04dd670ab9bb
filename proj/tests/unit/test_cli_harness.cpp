#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "elastocloak/errors.hpp"
#include "elastocloak/harness.hpp"

using namespace elastocloak;
using namespace elastocloak::harness;

namespace {

const Check* find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("log-log fit") {
  const LogLogFit exact = fit_loglog({0.1, 0.05, 0.025}, {0.02, 0.005, 0.00125});
  CHECK(exact.accepted);
  CHECK(std::abs(exact.slope - 2.0) < 1e-12);
  CHECK(std::abs(exact.r_squared - 1.0) < 1e-12);

  const LogLogFit zeros = fit_loglog({0.1, 0.05, 0.025}, {0.0, 0.0, 0.0});
  CHECK_FALSE(zeros.accepted);
  CHECK(zeros.reason.find("degenerate data") == 0);

  const LogLogFit one = fit_loglog({0.1}, {1.0});
  CHECK_FALSE(one.accepted);
  CHECK(one.reason.find("degenerate data") == 0);

  const LogLogFit scattered = fit_loglog({0.2, 0.1, 0.05, 0.025}, {1.0, 0.01, 1.0, 0.01});
  CHECK_FALSE(scattered.accepted);
  CHECK(scattered.r_squared < kMinRSquared);
  CHECK(scattered.reason.find("R^2") != std::string::npos);
}

TEST_CASE("config parsing and hashing") {
  const nlohmann::json j = {{"h", 0.2}, {"omega", 1.5}, {"n_max", 8}, {"background", {{"lambda", 2.0}}}};
  const HarnessConfig a = config_from_json(j), b = config_from_json(j);
  CHECK(a.params.h == 0.2);
  CHECK(a.background.lambda == cplx(2.0));
  CHECK(a.background.mu == cplx(1.0));
  CHECK(a.contents.size() == 3);
  CHECK(a.kernelcheck.omega == 1.5);
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  HarnessConfig c = a;
  c.n_max = 9;
  CHECK(config_hash(c) != config_hash(a));
  c = a;
  c.seed = 2;
  CHECK(config_hash(c) != config_hash(a));

  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), DomainError);
  CHECK_THROWS_AS(config_from_json({{"h", 0.7}}), DomainError);
  CHECK_THROWS_AS(config_from_json({{"omega", "fast"}}), Error);
  CHECK_THROWS_AS(config_from_json({{"resonance", {{"r0", 1.0}, {"r1", 0.5}}}}), DomainError);
  CHECK_THROWS_AS(load_config("/nonexistent/elastocloak.json"), Error);
}

TEST_CASE("identical candidate and reference give degenerate data") {
  const IsotropicMedium bg{1.0, 1.0, 1.0};
  const auto disk = [&](double) { return uniform_disk(bg); };
  const SweepResult s = run_sweep("same", {0.2, 0.1, 0.05}, 1.0, 8, disk, disk);
  CHECK_FALSE(s.fit.accepted);
  CHECK(s.fit.reason.find("degenerate data") == 0);
  for (const auto& p : s.points) CHECK(p.distance == 0.0);
  CHECK_THROWS_AS(run_sweep("bad", {0.1, 0.2}, 1.0, 8, disk, disk), DomainError);
}

TEST_CASE("sweep raises n_max until the tail is small") {
  const IsotropicMedium bg{1.0, 1.0, 1.0};
  const auto lining = [&](double h) { return build_lining_config(h, bg); };
  const auto disk = [&](double) { return uniform_disk(bg); };
  const SweepResult s = run_sweep("lining", {0.2, 0.1}, 1.0, 0, lining, disk);
  CHECK(s.n_max > 0);
  CHECK(s.n_max % 8 == 0);
  CHECK(s.tail_ok);
  CHECK(s.points[0].mode_distances.size() == static_cast<std::size_t>(s.n_max + 1));
}

TEST_CASE("design report") {
  const HarnessConfig empty = config_from_json({{"grid", nlohmann::json::array()}});
  const Report none = cmd_design(empty);
  CHECK(none.csv_rows.empty());
  const std::string csv = none.csv(config_hash(empty));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.rfind("# elastocloak 0.1.0 command=design config=", 0) == 0);

  const HarnessConfig some = config_from_json({{"grid", {0.5, 1.0, 1.5, 2.0}}});
  const Report r = cmd_design(some);
  CHECK(r.csv_rows.size() == 2);
  CHECK_FALSE(r.warnings.empty());
  CHECK(r.passed());
  CHECK(r.csv_header.front() == "r");
}

TEST_CASE("reports are byte-identical across runs") {
  const HarnessConfig c = config_from_json({{"grid", {1.2, 1.6, 2.0}}, {"seed", 5}});
  const auto dir = std::filesystem::temp_directory_path() / "ec_harness_test";
  std::filesystem::remove_all(dir);
  const Report first = run_command("design", c);
  write_report(first, config_hash(c), (dir / "a").string());
  write_report(run_command("design", c), config_hash(c), (dir / "b").string());
  CHECK(slurp(dir / "a" / "design.csv") == slurp(dir / "b" / "design.csv"));
  CHECK(slurp(dir / "a" / "design.json") == slurp(dir / "b" / "design.json"));
  const nlohmann::json js = nlohmann::json::parse(slurp(dir / "a" / "design.json"));
  CHECK(js.at("config_hash") == config_hash(c));
  CHECK(js.at("passed") == true);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(run_command("teleport", c), DomainError);
}

TEST_CASE("kernel self-check and fault injection") {
  const nlohmann::json base = {{"kernelcheck", {{"pairs", 200}}}};
  const Report ok = cmd_kernelcheck(config_from_json(base));
  CHECK(ok.passed());
  REQUIRE(find_check(ok, "asymptotic_gap") != nullptr);

  nlohmann::json broken = base;
  broken["kernelcheck"]["negate_eta"] = true;
  const Report bad = cmd_kernelcheck(config_from_json(broken));
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(find_check(bad, "asymptotic_gap")->passed);
  CHECK(find_check(bad, "reciprocity")->passed);

  nlohmann::json stat = base;
  stat["kernelcheck"]["omega"] = 0.0;
  const Report s = cmd_kernelcheck(config_from_json(stat));
  CHECK(s.passed());
  CHECK(find_check(s, "static_s_symmetric") != nullptr);
  CHECK(find_check(s, "asymptotic_gap") == nullptr);
  CHECK(find_check(s, "series_vs_closed_3d") == nullptr);
}

TEST_CASE("resonance report") {
  const Report r = cmd_resonance(config_from_json(nlohmann::json::object()));
  CHECK(r.passed());
  CHECK(find_check(r, "condition_spike")->value > 1e3);
}
