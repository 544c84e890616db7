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

#include "ttw/report.hpp"

#include <chrono>

namespace ttw {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

VerificationReport check_equal(const std::string& name, int k, const OperatorExpr& lhs,
                               const OperatorExpr& rhs) {
  auto t0 = std::chrono::steady_clock::now();
  OperatorExpr residual = lhs - rhs;
  VerificationReport r;
  r.name = name;
  r.k = k;
  r.residual_terms = residual.term_count();
  r.status = residual.is_zero() ? VerificationReport::Status::exact_pass
                                : VerificationReport::Status::fail;
  if (!residual.is_zero()) r.detail = residual.to_string();
  r.wall_ms = elapsed_ms(t0);
  return r;
}

VerificationReport check_zero(const std::string& name, int k, const OperatorExpr& expr) {
  VerificationReport r;
  r.name = name;
  r.k = k;
  r.residual_terms = expr.term_count();
  r.status = expr.is_zero() ? VerificationReport::Status::exact_pass
                            : VerificationReport::Status::fail;
  if (!expr.is_zero()) r.detail = expr.to_string();
  return r;
}

VerificationReport check_condition(const std::string& name, int k, bool ok,
                                   const std::string& detail) {
  VerificationReport r;
  r.name = name;
  r.k = k;
  r.residual_terms = ok ? 0 : 1;
  r.status = ok ? VerificationReport::Status::exact_pass : VerificationReport::Status::fail;
  r.detail = detail;
  return r;
}

}  // namespace ttw
