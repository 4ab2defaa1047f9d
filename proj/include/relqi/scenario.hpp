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
#include <vector>

#include "relqi/config.hpp"
#include "relqi/horizon.hpp"
#include "relqi/report.hpp"

namespace relqi {

std::vector<std::string> scenario_ids();

// Throws UsageError for an unknown scenario or parameter, ValidationError for
// out-of-range values.
Report run_scenario(const RunConfig& config);

// The requested format, or the scenario's default.
OutputFormat output_format(const RunConfig& config, const std::string& id);

// "constants.hbar", "constants.c", "constants.G", "constants.k_B", SI defaults.
PhysicalConstants read_constants(Params& p);

nlohmann::json make_meta(const std::string& id, const Params& p);

}  // namespace relqi
