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

/* C interface to the relqi library. All functions return a relqi_status;
 * on failure relqi_last_error() describes the problem. Strings returned
 * through char** are owned by the caller and released with
 * relqi_string_free(). */

#ifndef RELQI_H_
#define RELQI_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RELQI_BUILDING)
#define RELQI_API __declspec(dllexport)
#else
#define RELQI_API __declspec(dllimport)
#endif
#else
#define RELQI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Nonzero values double as CLI exit codes. */
typedef enum relqi_status {
  RELQI_OK = 0,
  RELQI_ERR_INTERNAL = 1,
  RELQI_ERR_USAGE = 2,      /* unknown scenario, key or flag; bad handle or null argument */
  RELQI_ERR_VALIDATION = 3, /* input violates a physical or structural invariant */
  RELQI_ERR_NUMERICAL = 4   /* accuracy target not reached */
} relqi_status;

typedef struct relqi_config relqi_config;
typedef struct relqi_report relqi_report;

RELQI_API const char* relqi_version(void);
/* Message of the last failed call on this thread; "" if none. */
RELQI_API const char* relqi_last_error(void);
RELQI_API void relqi_string_free(char* s);

RELQI_API int relqi_scenario_count(void);
/* Pointer to a static string, or NULL when index is out of range. */
RELQI_API const char* relqi_scenario_name(int index);

RELQI_API relqi_status relqi_config_new(relqi_config** out);
RELQI_API void relqi_config_free(relqi_config* config);
/* Keys: scenario, seed, format, out, tol.<name>, or a scenario parameter. */
RELQI_API relqi_status relqi_config_set(relqi_config* config, const char* key, const char* value);
/* Flat "key = value" lines; '#' starts a comment. */
RELQI_API relqi_status relqi_config_load_file(relqi_config* config, const char* path);
RELQI_API relqi_status relqi_config_load_text(relqi_config* config, const char* text);
/* Output path set through "out"; *path is "" when unset and stays valid
 * while the config lives. */
RELQI_API relqi_status relqi_config_out_path(const relqi_config* config, const char** path);

RELQI_API relqi_status relqi_run(const relqi_config* config, relqi_report** out);
/* Runs the acceptance criteria; *all_passed is 1 or 0. A failed criterion
 * is not an error status. */
RELQI_API relqi_status relqi_selfcheck(const relqi_config* config, relqi_report** out, int* all_passed);
/* format is "csv", "json", or NULL for the config's or scenario's default. */
RELQI_API relqi_status relqi_report_render(const relqi_report* report, const char* format, char** out);
RELQI_API void relqi_report_free(relqi_report* report);

/* Checks text emitted by relqi_report_render against its schema;
 * RELQI_ERR_VALIDATION when it does not conform. */
RELQI_API relqi_status relqi_validate_output(const char* text);

/* Direct calculators. SI units unless noted. */
RELQI_API relqi_status relqi_unruh_temperature(double acceleration, double* kelvin);
RELQI_API relqi_status relqi_hawking_temperature(double mass_kg, double* kelvin);
/* Wigner rotation for momentum p (E, px, py, pz) of a particle of the
 * given mass under the active boost with velocity v (natural units). */
RELQI_API relqi_status relqi_wigner_rotation(const double p[4], double mass, const double v[3], double axis[3],
                                             double* angle);
/* Density matrices as row-major interleaved (re, im) pairs, 2 * dim * dim
 * doubles each. */
RELQI_API relqi_status relqi_error_probability(int dim, const double* rho1, const double* rho2, double* out);
RELQI_API relqi_status relqi_concurrence(const double rho[32], double* out);

#ifdef __cplusplus
}
#endif

#endif /* RELQI_H_ */
