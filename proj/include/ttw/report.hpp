/*
   Copyright 2026 The ttweng Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttw/operator_expr.hpp"

namespace ttw {

/// Outcome of one identity check.  status is exact-pass exactly when the
/// residual canonical form is empty.
struct VerificationReport {
  enum class Status { exact_pass, fail };

  std::string name;
  int k = 0;
  Status status = Status::fail;
  std::size_t residual_terms = 0;
  double wall_ms = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> detail;

  bool passed() const { return status == Status::exact_pass; }
  static const char* status_name(Status s) {
    return s == Status::exact_pass ? "exact-pass" : "fail";
  }
};

/// Runs lhs - rhs through the canonical form and reports the residual.
VerificationReport check_equal(const std::string& name, int k, const OperatorExpr& lhs,
                               const OperatorExpr& rhs);
/// Reports whether the expression is exactly zero.
VerificationReport check_zero(const std::string& name, int k, const OperatorExpr& expr);
/// Reports an externally evaluated condition (used by the numeric oracle).
VerificationReport check_condition(const std::string& name, int k, bool ok,
                                   const std::string& detail);

}  // namespace ttw
