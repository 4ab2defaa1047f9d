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

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "relqi/config.hpp"

namespace relqi {

enum class ColumnKind { number, text, flag };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::number;
};

// Shape of one output kind (a scenario or the self-check).
struct Schema {
  std::string id;
  OutputFormat default_format = OutputFormat::json;
  std::string table_key = "rows";
  std::vector<Column> columns;
  std::vector<std::string> summary_keys;
};

const std::vector<Schema>& schemas();
// Throws UsageError for an unknown id.
const Schema& schema_for(const std::string& id);

struct Report {
  Report() = default;
  explicit Report(std::string report_id) : id(std::move(report_id)) {}

  std::string id;
  nlohmann::json meta = nlohmann::json::object();     // version, seed, params, tolerances
  nlohmann::json summary = nlohmann::json::object();  // scalar results
  std::vector<std::vector<nlohmann::json>> rows;      // one cell per schema column

  void add_row(std::vector<nlohmann::json> cells);
};

// "# key=value" metadata lines, a header row, then one line per row with
// numbers at 17 significant digits.
std::string to_csv(const Report& r);
// Summary keys at top level next to "meta" and the table array; keys sorted.
std::string to_json(const Report& r);
std::string render(const Report& r, OutputFormat f);

// Schema checks on emitted text; throw ValidationError naming the problem.
void validate_csv(const std::string& text);
void validate_json(const std::string& text);
// Picks the validator from the first non-blank character.
void validate_output(const std::string& text);

std::string version_string();

}  // namespace relqi
