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

#include "relqi/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("seed must be an unsigned 64-bit integer: '" + text + "'");
  return v;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw UsageError("format must be csv or json: '" + s + "'");
}

std::string format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": not a number: '" + text + "'");
  }
  if (used != t.size()) throw UsageError(what + ": not a number: '" + text + "'");
  return v;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::string k = trim(key), v = trim(value);
  if (k.empty()) throw UsageError("empty config key");
  if (k == "scenario") {
    scenario = v;
  } else if (k == "seed") {
    seed = parse_seed(v);
  } else if (k == "format") {
    format = parse_format(v);
  } else if (k == "out") {
    out = v;
  } else if (k.rfind("tol.", 0) == 0) {
    if (k.size() == 4) throw UsageError("empty tolerance name");
    const double t = parse_real(v, k);
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError(k + " must be finite and nonnegative");
    tolerances[k.substr(4)] = t;
  } else {
    params[k] = v;
  }
}

void apply_config_text(RunConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(number) + ": expected key = value");
    config.set(line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(config, ss.str());
}

Params::Params(const RunConfig& config)
    : params_(config.params), tolerances_(config.tolerances), seed_(config.seed) {}

const std::string* Params::raw(const std::string& key) {
  read_.insert(key);
  const auto it = params_.find(key);
  return it == params_.end() ? nullptr : &it->second;
}

double Params::real(const std::string& key, double fallback, double lo, double hi) {
  const std::string* r = raw(key);
  const double v = r ? parse_real(*r, key) : fallback;
  if (!(v >= lo && v <= hi)) {
    std::ostringstream os;
    os << key << " = " << v << " outside [" << lo << ", " << hi << "]";
    throw ValidationError(os.str());
  }
  params_used_[key] = v;
  return v;
}

int Params::integer(const std::string& key, int fallback, int lo, int hi) {
  const std::string* r = raw(key);
  int v = fallback;
  if (r) {
    const auto* end = r->data() + r->size();
    const auto [ptr, ec] = std::from_chars(r->data(), end, v);
    if (ec != std::errc() || ptr != end) throw UsageError(key + ": not an integer: '" + *r + "'");
  }
  if (v < lo || v > hi) {
    std::ostringstream os;
    os << key << " = " << v << " outside [" << lo << ", " << hi << "]";
    throw ValidationError(os.str());
  }
  params_used_[key] = v;
  return v;
}

std::vector<double> Params::reals(const std::string& key, const std::vector<double>& fallback, double lo,
                                  double hi) {
  const std::string* r = raw(key);
  std::vector<double> v = fallback;
  if (r) {
    v.clear();
    std::istringstream in(*r);
    std::string item;
    while (std::getline(in, item, ',')) v.push_back(parse_real(item, key));
  }
  if (v.empty()) throw ValidationError(key + " must list at least one value");
  for (double x : v)
    if (!(x >= lo && x <= hi)) {
      std::ostringstream os;
      os << key << " contains " << x << " outside [" << lo << ", " << hi << "]";
      throw ValidationError(os.str());
    }
  params_used_[key] = v;
  return v;
}

std::string Params::choice(const std::string& key, const std::string& fallback, const std::set<std::string>& allowed) {
  const std::string* r = raw(key);
  const std::string v = r ? *r : fallback;
  if (!allowed.count(v)) throw ValidationError(key + ": unsupported value '" + v + "'");
  params_used_[key] = v;
  return v;
}

double Params::tol(const std::string& name, double fallback) {
  tol_read_.insert(name);
  const auto it = tolerances_.find(name);
  const double v = it == tolerances_.end() ? fallback : it->second;
  tol_used_[name] = v;
  return v;
}

void Params::finish() const {
  for (const auto& [k, v] : params_)
    if (!read_.count(k)) throw UsageError("unknown parameter '" + k + "' for this scenario");
  for (const auto& [k, v] : tolerances_)
    if (!tol_read_.count(k)) throw UsageError("unknown tolerance 'tol." + k + "' for this scenario");
}

}  // namespace relqi
