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

// Command-line front end over the relqi C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "relqi.h"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;

const char* status_name(relqi_status s) {
  switch (s) {
    case RELQI_OK: return "ok";
    case RELQI_ERR_USAGE: return "usage";
    case RELQI_ERR_VALIDATION: return "validation";
    case RELQI_ERR_NUMERICAL: return "numerical";
    default: return "internal";
  }
}

// One JSON line on stderr; the status doubles as the exit code.
int report_failure(relqi_status s, const std::string& message) {
  nlohmann::json d;
  d["error"]["class"] = status_name(s);
  d["error"]["message"] = message;
  d["error"]["exit_code"] = static_cast<int>(s);
  std::cerr << d.dump() << "\n";
  return static_cast<int>(s);
}

int report_failure(relqi_status s) { return report_failure(s, relqi_last_error()); }

struct ConfigHandle {
  relqi_config* ptr = nullptr;
  ~ConfigHandle() { relqi_config_free(ptr); }
};

struct ReportHandle {
  relqi_report* ptr = nullptr;
  ~ReportHandle() { relqi_report_free(ptr); }
};

// "--tol.x=1", "--tol.x 1", "--grid.points 21"; anything else is a usage error.
std::optional<std::string> collect_extras(const std::vector<std::string>& extras,
                                          std::vector<std::pair<std::string, std::string>>& out) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--tol.", 0) != 0 && a.rfind("--grid.", 0) != 0) return "unrecognized argument '" + a + "'";
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(a.substr(2, eq - 2), a.substr(eq + 1));
    } else {
      if (i + 1 >= extras.size()) return "missing value for '" + a + "'";
      out.emplace_back(a.substr(2), extras[++i]);
    }
  }
  return std::nullopt;
}

bool write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return std::fflush(stdout) == 0;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relqi: relativistic quantum information scenarios and self-check"};
  app.allow_extras();
  std::string scenario, config_path, seed, out, format, validate_path;
  std::vector<std::string> sets;
  bool selfcheck = false, list = false, version = false;
  app.add_option("--scenario", scenario, "Scenario id (see --list)");
  app.add_option("--config", config_path, "Flat key = value config file; flags override it");
  app.add_option("--seed", seed, "64-bit seed recorded in the output metadata");
  app.add_option("--out", out, "Output file (default stdout)");
  app.add_option("--format", format, "csv or json (default depends on the scenario)");
  app.add_option("--set", sets, "Scenario parameter as key=value (repeatable)");
  app.add_flag("--selfcheck", selfcheck, "Run the acceptance criteria");
  app.add_option("--validate", validate_path, "Check an emitted CSV/JSON file against its schema");
  app.add_flag("--list", list, "List scenario ids");
  app.add_flag("--version", version, "Print the library version");
  app.footer("Tolerances and grids: --tol.<name> VALUE, --grid.<name> VALUE.\n"
             "Exit codes: 0 ok, 2 usage, 3 validation, 4 numerical or failed self-check.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_failure(RELQI_ERR_USAGE, e.what());
  }

  if (version) {
    std::cout << relqi_version() << "\n";
    return 0;
  }
  if (list) {
    for (int i = 0; i < relqi_scenario_count(); ++i) std::cout << relqi_scenario_name(i) << "\n";
    return 0;
  }
  if (!validate_path.empty()) {
    std::ifstream in(validate_path, std::ios::binary);
    if (!in) return report_failure(RELQI_ERR_USAGE, "cannot read '" + validate_path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const relqi_status s = relqi_validate_output(text.c_str());
    if (s != RELQI_OK) return report_failure(s);
    std::cout << "valid\n";
    return 0;
  }

  std::vector<std::pair<std::string, std::string>> extras;
  if (auto err = collect_extras(app.remaining(), extras)) return report_failure(RELQI_ERR_USAGE, *err);

  ConfigHandle config;
  relqi_status s = relqi_config_new(&config.ptr);
  if (s != RELQI_OK) return report_failure(s);
  if (!config_path.empty() && (s = relqi_config_load_file(config.ptr, config_path.c_str())) != RELQI_OK)
    return report_failure(s);
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!scenario.empty()) pairs.emplace_back("scenario", scenario);
  if (!seed.empty()) pairs.emplace_back("seed", seed);
  if (!format.empty()) pairs.emplace_back("format", format);
  if (!out.empty()) pairs.emplace_back("out", out);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) return report_failure(RELQI_ERR_USAGE, "--set expects key=value, got '" + kv + "'");
    pairs.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  pairs.insert(pairs.end(), extras.begin(), extras.end());
  for (const auto& [k, v] : pairs)
    if ((s = relqi_config_set(config.ptr, k.c_str(), v.c_str())) != RELQI_OK) return report_failure(s);

  ReportHandle report;
  int passed = 1;
  if (selfcheck) {
    if (!scenario.empty()) return report_failure(RELQI_ERR_USAGE, "--selfcheck and --scenario are exclusive");
    s = relqi_selfcheck(config.ptr, &report.ptr, &passed);
  } else {
    s = relqi_run(config.ptr, &report.ptr);
  }
  if (s != RELQI_OK) return report_failure(s);

  char* text = nullptr;
  if ((s = relqi_report_render(report.ptr, nullptr, &text)) != RELQI_OK) return report_failure(s);
  const char* path = "";
  relqi_config_out_path(config.ptr, &path);
  const bool ok = write_output(path, text);
  relqi_string_free(text);
  if (!ok) return report_failure(RELQI_ERR_USAGE, std::string("cannot write '") + path + "'");
  if (!passed) {
    std::cerr << "self-check: one or more acceptance criteria failed\n";
    return kExitNumerical;
  }
  return 0;
}
