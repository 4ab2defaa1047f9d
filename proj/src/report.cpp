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

#include "relqi/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "relqi/errors.hpp"

#ifndef RELQI_VERSION
#define RELQI_VERSION "0.0.0"
#endif

namespace relqi {

namespace {

using json = nlohmann::json;

constexpr const char* kCsvFormat = "relqi-csv/1";

Column num(const char* n) { return {n, ColumnKind::number}; }
Column txt(const char* n) { return {n, ColumnKind::text}; }
Column flag(const char* n) { return {n, ColumnKind::flag}; }

std::string number_text(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return number_text(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_null()) return "nan";
  return v.dump();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ValidationError("csv: unterminated quote");
  out.push_back(cur);
  return out;
}

bool is_number_text(const std::string& s) {
  if (s == "nan" || s == "inf" || s == "-inf") return true;
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size();
}

void fail(const std::string& what) { throw ValidationError(what); }

}  // namespace

std::string version_string() { return RELQI_VERSION; }

const std::vector<Schema>& schemas() {
  using F = OutputFormat;
  static const std::vector<Schema> all = {
      {"fig2-entropy", F::csv, "rows", {num("theta_rad"), num("gamma"), num("entropy_nats")}, {"max_entropy_nats"}},
      {"pe-gamma-scaling", F::csv, "rows", {num("gamma"), num("beta"), num("p_e")}, {"exponent", "restored_error"}},
      {"bipartite-concurrence",
       F::csv,
       "rows",
       {num("rapidity"), num("concurrence"), num("restored_concurrence")},
       {"min_concurrence"}},
      {"photon-doppler", F::csv, "rows", {num("aperture"), num("v"), num("P_E"), num("P'_E"), num("ratio")}, {}},
      {"photon-povm",
       F::json,
       "packets",
       {num("packet"), num("E_x"), num("E_y"), num("E_z"), num("sum"), num("effective_minus_naive")},
       {"max_completeness_error", "max_effective_naive_difference"}},
      {"causality-bell",
       F::json,
       "witnesses",
       {txt("operation_id"), txt("direction"), txt("witness_pre_op"), num("advantage"), num("tolerance"),
        num("max_shift"), flag("semicausal")},
       {"incomplete_bell_advantage"}},
      {"teleport-check",
       F::json,
       "trials",
       {num("trial"), num("identity_residual"), num("fidelity")},
       {"max_identity_residual", "min_fidelity"}},
      {"chsh", F::json, "states", {txt("state"), num("analytic"), num("grid")}, {"singlet_zeta", "tsirelson"}},
      {"cluster-bound", F::csv, "rows", {num("mass"), num("separation"), num("bound")}, {}},
      {"unruh",
       F::csv,
       "rows",
       {num("acceleration_m_s2"), num("temperature_K")},
       {"detailed_balance_max_error", "response_at_zero_gap"}},
      {"rindler", F::csv, "rows", {num("omega_over_a"), num("mean_n"), num("entropy")}, {"max_oracle_deviation"}},
      {"blackhole-evaporate", F::json, "samples", {num("t"), num("M")}, {"M0_kg", "t_E_s"}},
      {"superscatter-demo",
       F::json,
       "rho_out",
       {num("row"), num("col"), num("re"), num("im")},
       {"entropy_in", "entropy_out", "trace_out", "cp_min_eig", "is_cp"}},
      {"selfcheck",
       F::json,
       "criteria",
       {num("id"), txt("name"), flag("passed"), txt("failure_class"), txt("worst_check"), num("measured"),
        num("tolerance"), flag("quadrature_limited"), txt("detail")},
       {"all_passed", "failed", "total"}},
  };
  return all;
}

const Schema& schema_for(const std::string& id) {
  for (const auto& s : schemas())
    if (s.id == id) return s;
  throw UsageError("unknown scenario '" + id + "'");
}

void Report::add_row(std::vector<nlohmann::json> cells) {
  if (cells.size() != schema_for(id).columns.size()) throw StructuralError("report row does not match schema");
  rows.push_back(std::move(cells));
}

std::string to_csv(const Report& r) {
  const Schema& s = schema_for(r.id);
  std::ostringstream os;
  os << "# format=" << kCsvFormat << "\n";
  for (const auto& [k, v] : r.meta.items()) {
    if (v.is_object()) {
      const std::string prefix = k == "params" ? "param." : k == "tolerances" ? "tol." : k + ".";
      for (const auto& [k2, v2] : v.items()) os << "# " << prefix << k2 << "=" << scalar_text(v2) << "\n";
    } else {
      os << "# " << k << "=" << scalar_text(v) << "\n";
    }
  }
  for (const auto& [k, v] : r.summary.items()) os << "# summary." << k << "=" << scalar_text(v) << "\n";
  for (std::size_t i = 0; i < s.columns.size(); ++i) os << (i ? "," : "") << csv_field(s.columns[i].name);
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(scalar_text(row[i]));
    os << "\n";
  }
  return os.str();
}

std::string to_json(const Report& r) {
  const Schema& s = schema_for(r.id);
  json out = r.summary;
  out["meta"] = r.meta;
  json table = json::array();
  for (const auto& row : r.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const json& cell = row[i];
      // JSON has no NaN; null marks an undefined number.
      obj[s.columns[i].name] = (cell.is_number_float() && !std::isfinite(cell.get<double>())) ? json() : cell;
    }
    table.push_back(std::move(obj));
  }
  out[s.table_key] = std::move(table);
  return out.dump(2) + "\n";
}

std::string render(const Report& r, OutputFormat f) { return f == OutputFormat::csv ? to_csv(r) : to_json(r); }

void validate_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail("csv: metadata line without '=': " + line);
      meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    header = split_csv_line(line);
    break;
  }
  if (meta["format"] != kCsvFormat) fail("csv: missing or unknown format line");
  for (const char* k : {"version", "scenario", "seed"})
    if (!meta.count(k)) fail(std::string("csv: metadata lacks ") + k);
  const Schema* s = nullptr;
  try {
    s = &schema_for(meta["scenario"]);
  } catch (const UsageError& e) {
    fail(std::string("csv: ") + e.what());
  }
  for (const auto& k : s->summary_keys)
    if (!meta.count("summary." + k)) fail("csv: metadata lacks summary." + k);
  if (header.size() != s->columns.size()) fail("csv: header has the wrong number of columns");
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] != s->columns[i].name) fail("csv: unexpected column '" + header[i] + "'");
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) fail("csv: row " + std::to_string(row) + " has the wrong number of fields");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto kind = s->columns[i].kind;
      if (kind == ColumnKind::number && !is_number_text(cells[i]))
        fail("csv: row " + std::to_string(row) + ", column " + header[i] + ": not a number");
      if (kind == ColumnKind::flag && cells[i] != "true" && cells[i] != "false")
        fail("csv: row " + std::to_string(row) + ", column " + header[i] + ": not true/false");
    }
  }
}

void validate_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("json: ") + e.what());
  }
  if (!doc.is_object()) fail("json: top level is not an object");
  if (!doc.contains("meta") || !doc["meta"].is_object()) fail("json: missing meta object");
  const json& meta = doc["meta"];
  if (!meta.contains("version") || !meta["version"].is_string()) fail("json: meta.version missing");
  if (!meta.contains("scenario") || !meta["scenario"].is_string()) fail("json: meta.scenario missing");
  if (!meta.contains("seed") || !meta["seed"].is_number_unsigned()) fail("json: meta.seed missing");
  for (const char* k : {"params", "tolerances"})
    if (!meta.contains(k) || !meta[k].is_object()) fail(std::string("json: meta.") + k + " missing");
  const Schema* s = nullptr;
  try {
    s = &schema_for(meta["scenario"].get<std::string>());
  } catch (const UsageError& e) {
    fail(std::string("json: ") + e.what());
  }
  for (const auto& k : s->summary_keys)
    if (!doc.contains(k)) fail("json: missing summary key " + k);
  if (!doc.contains(s->table_key) || !doc[s->table_key].is_array()) fail("json: missing array " + s->table_key);
  int row = 0;
  for (const auto& item : doc[s->table_key]) {
    ++row;
    if (!item.is_object() || item.size() != s->columns.size())
      fail("json: " + s->table_key + " entry " + std::to_string(row) + " has the wrong shape");
    for (const auto& c : s->columns) {
      if (!item.contains(c.name)) fail("json: entry " + std::to_string(row) + " lacks " + c.name);
      const json& v = item[c.name];
      const bool ok = c.kind == ColumnKind::number ? (v.is_number() || v.is_null())
                      : c.kind == ColumnKind::text ? v.is_string()
                                                   : v.is_boolean();
      if (!ok) fail("json: entry " + std::to_string(row) + ", " + c.name + " has the wrong type");
    }
  }
}

void validate_output(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  if (p == std::string::npos) fail("empty output");
  if (text[p] == '{') validate_json(text);
  else validate_csv(text);
}

}  // namespace relqi
