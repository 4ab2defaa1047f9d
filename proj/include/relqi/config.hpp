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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace relqi {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& s);
std::string format_name(OutputFormat f);

inline constexpr std::uint64_t kDefaultSeed = 2026;

// Everything a run needs. Keys other than scenario/seed/format/out are kept
// as text and interpreted by the scenario; "tol.<name>" keys become tolerance
// overrides.
struct RunConfig {
  std::string scenario;
  std::uint64_t seed = kDefaultSeed;
  std::optional<OutputFormat> format;
  std::string out;
  std::map<std::string, std::string> params;
  std::map<std::string, double> tolerances;

  // Later calls win, so apply the file first and the command line after.
  void set(const std::string& key, const std::string& value);
};

// Flat "key = value" lines; '#' starts a comment.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_file(RunConfig& config, const std::string& path);

// Typed, range-checked access to a config's parameters. Records every value
// read (defaults included) for output metadata; finish() rejects keys that
// were set but never read.
class Params {
 public:
  explicit Params(const RunConfig& config);

  double real(const std::string& key, double fallback, double lo, double hi);
  int integer(const std::string& key, int fallback, int lo, int hi);
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback, double lo, double hi);
  std::string choice(const std::string& key, const std::string& fallback, const std::set<std::string>& allowed);
  double tol(const std::string& name, double fallback);

  std::uint64_t seed() const { return seed_; }
  void finish() const;
  const nlohmann::json& used_params() const { return params_used_; }
  const nlohmann::json& used_tolerances() const { return tol_used_; }

 private:
  const std::string* raw(const std::string& key);

  std::map<std::string, std::string> params_;
  std::map<std::string, double> tolerances_;
  std::set<std::string> read_;
  std::set<std::string> tol_read_;
  std::uint64_t seed_;
  nlohmann::json params_used_ = nlohmann::json::object();
  nlohmann::json tol_used_ = nlohmann::json::object();
};

double parse_real(const std::string& text, const std::string& what);

}  // namespace relqi
