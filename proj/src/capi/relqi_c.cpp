// Copyright 2026 The relqi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relqi.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "relqi/config.hpp"
#include "relqi/errors.hpp"
#include "relqi/horizon.hpp"
#include "relqi/lorentz.hpp"
#include "relqi/qstate.hpp"
#include "relqi/report.hpp"
#include "relqi/scenario.hpp"
#include "relqi/selfcheck.hpp"

struct relqi_config {
  relqi::RunConfig config;
};

struct relqi_report {
  relqi::Report report;
  relqi::OutputFormat format;
};

namespace {

thread_local std::string g_last_error;

relqi_status fail(relqi_status s, const std::string& message) {
  g_last_error = message;
  return s;
}

// Runs f, mapping library exceptions onto status codes.
template <class F>
relqi_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return RELQI_OK;
  } catch (const relqi::UsageError& e) {
    return fail(RELQI_ERR_USAGE, e.what());
  } catch (const relqi::ValidationError& e) {
    return fail(RELQI_ERR_VALIDATION, e.what());
  } catch (const relqi::StructuralError& e) {
    return fail(RELQI_ERR_VALIDATION, e.what());
  } catch (const relqi::NumericalError& e) {
    return fail(RELQI_ERR_NUMERICAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RELQI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RELQI_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

relqi::DensityMatrix read_rho(int dim, const double* d) {
  relqi::Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = relqi::cplx(d[2 * (i * dim + j)], d[2 * (i * dim + j) + 1]);
  return relqi::DensityMatrix(m);
}

}  // namespace

#define RELQI_REQUIRE(cond, what) \
  if (!(cond)) return fail(RELQI_ERR_USAGE, what)

extern "C" {

const char* relqi_version(void) {
  static const std::string v = relqi::version_string();
  return v.c_str();
}

const char* relqi_last_error(void) { return g_last_error.c_str(); }

void relqi_string_free(char* s) { std::free(s); }

int relqi_scenario_count(void) { return static_cast<int>(relqi::scenario_ids().size()); }

const char* relqi_scenario_name(int index) {
  static const std::vector<std::string> ids = relqi::scenario_ids();
  if (index < 0 || index >= static_cast<int>(ids.size())) return nullptr;
  return ids[static_cast<std::size_t>(index)].c_str();
}

relqi_status relqi_config_new(relqi_config** out) {
  RELQI_REQUIRE(out, "relqi_config_new: null output pointer");
  return guarded([&] { *out = new relqi_config(); });
}

void relqi_config_free(relqi_config* config) { delete config; }

relqi_status relqi_config_set(relqi_config* config, const char* key, const char* value) {
  RELQI_REQUIRE(config && key && value, "relqi_config_set: null argument");
  return guarded([&] { config->config.set(key, value); });
}

relqi_status relqi_config_load_file(relqi_config* config, const char* path) {
  RELQI_REQUIRE(config && path, "relqi_config_load_file: null argument");
  return guarded([&] { relqi::apply_config_file(config->config, path); });
}

relqi_status relqi_config_load_text(relqi_config* config, const char* text) {
  RELQI_REQUIRE(config && text, "relqi_config_load_text: null argument");
  return guarded([&] { relqi::apply_config_text(config->config, text); });
}

relqi_status relqi_config_out_path(const relqi_config* config, const char** path) {
  RELQI_REQUIRE(config && path, "relqi_config_out_path: null argument");
  *path = config->config.out.c_str();
  return RELQI_OK;
}

relqi_status relqi_run(const relqi_config* config, relqi_report** out) {
  RELQI_REQUIRE(config && out, "relqi_run: null argument");
  *out = nullptr;
  return guarded([&] {
    relqi::Report r = relqi::run_scenario(config->config);
    const auto f = relqi::output_format(config->config, r.id);
    *out = new relqi_report{std::move(r), f};
  });
}

relqi_status relqi_selfcheck(const relqi_config* config, relqi_report** out, int* all_passed) {
  RELQI_REQUIRE(config && out && all_passed, "relqi_selfcheck: null argument");
  *out = nullptr;
  return guarded([&] {
    relqi::SelfcheckResult result;
    relqi::Report r = relqi::selfcheck_report(config->config, &result);
    *all_passed = result.all_passed() ? 1 : 0;
    const auto f = config->config.format.value_or(relqi::OutputFormat::json);
    *out = new relqi_report{std::move(r), f};
  });
}

relqi_status relqi_report_render(const relqi_report* report, const char* format, char** out) {
  RELQI_REQUIRE(report && out, "relqi_report_render: null argument");
  *out = nullptr;
  return guarded([&] {
    const auto f = format ? relqi::parse_format(format) : report->format;
    *out = copy_string(relqi::render(report->report, f));
  });
}

void relqi_report_free(relqi_report* report) { delete report; }

relqi_status relqi_validate_output(const char* text) {
  RELQI_REQUIRE(text, "relqi_validate_output: null argument");
  return guarded([&] { relqi::validate_output(text); });
}

relqi_status relqi_unruh_temperature(double acceleration, double* kelvin) {
  RELQI_REQUIRE(kelvin, "relqi_unruh_temperature: null argument");
  return guarded([&] { *kelvin = relqi::unruh_temperature(acceleration); });
}

relqi_status relqi_hawking_temperature(double mass_kg, double* kelvin) {
  RELQI_REQUIRE(kelvin, "relqi_hawking_temperature: null argument");
  return guarded(
      [&] { *kelvin = relqi::hawking_temperature(relqi::BlackHole(mass_kg), relqi::PhysicalConstants::si()); });
}

relqi_status relqi_wigner_rotation(const double p[4], double mass, const double v[3], double axis[3],
                                   double* angle) {
  RELQI_REQUIRE(p && v && axis && angle, "relqi_wigner_rotation: null argument");
  return guarded([&] {
    const auto w = relqi::wigner_rotation(relqi::boost(Eigen::Vector3d(v[0], v[1], v[2])),
                                          relqi::FourVector(p[0], p[1], p[2], p[3]), mass);
    for (int i = 0; i < 3; ++i) axis[i] = w.axis(i);
    *angle = w.angle;
  });
}

relqi_status relqi_error_probability(int dim, const double* rho1, const double* rho2, double* out) {
  RELQI_REQUIRE(rho1 && rho2 && out, "relqi_error_probability: null argument");
  RELQI_REQUIRE(dim > 0, "relqi_error_probability: dimension must be positive");
  return guarded([&] { *out = relqi::error_probability(read_rho(dim, rho1), read_rho(dim, rho2)); });
}

relqi_status relqi_concurrence(const double rho[32], double* out) {
  RELQI_REQUIRE(rho && out, "relqi_concurrence: null argument");
  return guarded([&] { *out = relqi::concurrence(read_rho(4, rho)); });
}

}  // extern "C"
