#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "elastocloak.h"

namespace {

int report_error(const char* what) {
  std::cerr << "elastocloak: " << what << ": " << ec_last_error() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transformation elastodynamics cloaking experiments"};
  app.set_version_flag("--version", std::string(ec_version()));
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int n_max = -1;
  std::uint64_t seed = 0;
  bool seed_given = false;

  for (const char* name : {"design", "convergence", "lining", "resonance", "kernelcheck"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory for CSV and JSON reports")->required();
    sub->add_option("--n-max", n_max, "Fourier mode cutoff (overrides the config)")->check(CLI::Range(0, 256));
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { seed = s, seed_given = true; }, "random seed (overrides the config)");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  ec_config* config = nullptr;
  if (ec_config_from_file(config_path.c_str(), &config) != EC_OK) return report_error("loading configuration");
  if (n_max >= 0 && ec_config_set_n_max(config, n_max) != EC_OK) {
    ec_config_free(config);
    return report_error("--n-max");
  }
  if (seed_given) ec_config_set_seed(config, seed);

  ec_report* report = nullptr;
  const int status = ec_run(command.c_str(), config, &report);
  ec_config_free(config);
  if (status != EC_OK) return report_error(command.c_str());
  if (ec_report_write(report, out_dir.c_str()) != EC_OK) {
    ec_report_free(report);
    return report_error("write");
  }
  int passed = 0;
  ec_report_passed(report, &passed);
  std::cout << command << ": " << (passed ? "all checks passed" : "CHECKS FAILED") << " (reports in " << out_dir
            << ")\n";
  ec_report_free(report);
  return passed ? 0 : 2;
}
