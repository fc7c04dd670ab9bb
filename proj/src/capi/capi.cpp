#include <cstring>
#include <string>

#include "elastocloak.h"
#include "elastocloak/harness.hpp"
#include "elastocloak/kernels.hpp"

struct ec_config {
  elastocloak::harness::HarnessConfig value;
};

struct ec_report {
  elastocloak::harness::Report value;
  std::string hash, json, csv;
  bool passed = false;
};

struct ec_ntd {
  elastocloak::NtDOperator value;
};

namespace {

thread_local std::string last_error;

int fail(int code, const std::string& message) {
  last_error = message;
  return code;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
int guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return EC_OK;
  } catch (const elastocloak::Error& e) {
    return fail(static_cast<int>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(EC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EC_ERR_INTERNAL, "unknown failure");
  }
}

#define EC_REQUIRE(ptr) \
  if (!(ptr)) return fail(EC_ERR_NULL_ARGUMENT, #ptr " is null")

void write_matrix(const Eigen::Matrix2cd& m, double out[8]) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out[4 * i + 2 * j] = m(i, j).real();
      out[4 * i + 2 * j + 1] = m(i, j).imag();
    }
}

elastocloak::IsotropicMedium to_medium(const ec_medium& m) { return {m.lambda, m.mu, {m.rho_re, m.rho_im}}; }

}  // namespace

extern "C" {

const char* ec_version(void) { return elastocloak::harness::kVersion; }

const char* ec_last_error(void) { return last_error.c_str(); }

int ec_config_from_file(const char* path, ec_config** out) {
  EC_REQUIRE(path);
  EC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new ec_config{elastocloak::harness::load_config(path)}; });
}

int ec_config_from_json(const char* json_text, ec_config** out) {
  EC_REQUIRE(json_text);
  EC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
      throw elastocloak::Error(elastocloak::ErrorKind::Parse, e.what());
    }
    *out = new ec_config{elastocloak::harness::config_from_json(j)};
  });
}

int ec_config_set_n_max(ec_config* config, int n_max) {
  EC_REQUIRE(config);
  if (n_max < 0 || n_max > 256) return fail(EC_ERR_DOMAIN, "n_max must lie in [0, 256]");
  config->value.n_max = n_max;
  last_error.clear();
  return EC_OK;
}

int ec_config_set_seed(ec_config* config, uint64_t seed) {
  EC_REQUIRE(config);
  config->value.seed = seed;
  last_error.clear();
  return EC_OK;
}

int ec_config_hash(const ec_config* config, char out[17]) {
  EC_REQUIRE(config);
  EC_REQUIRE(out);
  return guarded([&] {
    const std::string h = elastocloak::harness::config_hash(config->value);
    std::memcpy(out, h.c_str(), 17);
  });
}

void ec_config_free(ec_config* config) { delete config; }

int ec_run(const char* command, const ec_config* config, ec_report** out) {
  EC_REQUIRE(command);
  EC_REQUIRE(config);
  EC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto* r = new ec_report;
    try {
      r->value = elastocloak::harness::run_command(command, config->value);
      r->hash = elastocloak::harness::config_hash(config->value);
      r->json = r->value.json(r->hash).dump(2);
      r->csv = r->value.csv(r->hash);
      r->passed = r->value.passed();
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

int ec_report_passed(const ec_report* report, int* passed) {
  EC_REQUIRE(report);
  EC_REQUIRE(passed);
  *passed = report->passed ? 1 : 0;
  last_error.clear();
  return EC_OK;
}

const char* ec_report_json(const ec_report* report) { return report ? report->json.c_str() : ""; }

const char* ec_report_csv(const ec_report* report) { return report ? report->csv.c_str() : ""; }

int ec_report_write(const ec_report* report, const char* out_dir) {
  EC_REQUIRE(report);
  EC_REQUIRE(out_dir);
  return guarded([&] { elastocloak::harness::write_report(report->value, report->hash, out_dir); });
}

void ec_report_free(ec_report* report) { delete report; }

int ec_green_2d(const double x[2], const double y[2], double omega, const ec_medium* medium, double out[8]) {
  EC_REQUIRE(x);
  EC_REQUIRE(y);
  EC_REQUIRE(medium);
  EC_REQUIRE(out);
  return guarded([&] {
    Eigen::VectorXd xv(2), yv(2);
    xv << x[0], x[1];
    yv << y[0], y[1];
    const elastocloak::IsotropicMedium m = to_medium(*medium);
    const Eigen::MatrixXcd g = omega == 0.0 ? elastocloak::green_static(xv, yv, m) : elastocloak::green_omega(xv, yv, omega, m);
    write_matrix(g, out);
  });
}

int ec_ntd_near_cloak(const ec_config* config, double h, ec_ntd** out) {
  EC_REQUIRE(config);
  EC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto& c = config->value;
    elastocloak::NearCloakParams p = c.params;
    p.h = h;
    const auto cloak = elastocloak::build_near_cloak(p, c.content, c.background);
    *out = new ec_ntd{elastocloak::assemble_ntd(cloak.virtual_config, c.omega, c.n_max)};
  });
}

int ec_ntd_uniform(const ec_config* config, ec_ntd** out) {
  EC_REQUIRE(config);
  EC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto& c = config->value;
    *out = new ec_ntd{elastocloak::assemble_ntd(elastocloak::uniform_disk(c.background), c.omega, c.n_max)};
  });
}

int ec_ntd_block(const ec_ntd* ntd, int n, double out[8]) {
  EC_REQUIRE(ntd);
  EC_REQUIRE(out);
  return guarded([&] { write_matrix(ntd->value.block(n), out); });
}

int ec_ntd_distance(const ec_ntd* a, const ec_ntd* b, double* out) {
  EC_REQUIRE(a);
  EC_REQUIRE(b);
  EC_REQUIRE(out);
  return guarded([&] { *out = elastocloak::ntd_distance(a->value, b->value); });
}

void ec_ntd_free(ec_ntd* ntd) { delete ntd; }

int ec_find_resonance(double lambda, double mu, double r0, double r1, double omega, double rho_out[2],
                      double* det_residual) {
  EC_REQUIRE(rho_out);
  return guarded([&] {
    const auto res = elastocloak::find_resonant_densities(lambda, mu, r0, r1, omega);
    rho_out[0] = res.rho1;
    rho_out[1] = res.rho2;
    if (det_residual) *det_residual = res.det_residual;
  });
}

}  // extern "C"
