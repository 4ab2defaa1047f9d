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
#include "relqi/report.hpp"

namespace relqi {

enum class Bound { upper, lower };  // measured <= tol, or measured >= tol

struct ToleranceSpec {
  std::string name;
  double value = 0.0;
  Bound bound = Bound::upper;
  bool quadrature_limited = false;
};

// Named tolerances of the acceptance criteria, overridable as tol.<name>.
const std::vector<ToleranceSpec>& selfcheck_tolerances();

struct CheckResult {
  std::string label;
  std::string tolerance_name;  // empty for exact logical checks
  double measured = 0.0;
  double tolerance = 0.0;
  double default_tolerance = 0.0;
  Bound bound = Bound::upper;
  bool quadrature_limited = false;
  bool passed = false;
};

enum class FailureClass { none, tolerance, logic };

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<CheckResult> checks;
  std::string error;  // exception text, if any
  bool passed = false;
  // tolerance: every failing check would pass at its default tolerance.
  FailureClass failure_class = FailureClass::none;
};

struct SelfcheckResult {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

// Runs the acceptance criteria. Physical constants ("constants.*") are
// validated first; bad constants throw ValidationError before any check.
SelfcheckResult run_selfcheck(const RunConfig& config);
Report selfcheck_report(const RunConfig& config, SelfcheckResult* result = nullptr);

std::string failure_class_name(FailureClass c);

}  // namespace relqi
