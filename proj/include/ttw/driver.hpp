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

#include "ttw/oracle.hpp"

namespace ttw {

/// Which check suites a verify run covers; each level includes the previous.
enum class CheckLevel { section2, boson, hamiltonians, full };

enum class OutputFormat { text, structured };

CheckLevel parse_level(const std::string& name);
const char* level_name(CheckLevel level);

/// Configuration of one verification or dump run.
struct RunConfig {
  int k = 3;
  CheckLevel level = CheckLevel::full;
  OutputFormat format = OutputFormat::text;
  std::string out_path;      // empty = stdout
  std::uint64_t seed = 1;
  std::size_t budget_terms = 0;   // 0 = policy default
  double budget_seconds = 0.0;    // 0 = policy default
  bool omit_timing = false;
  // dump-only numeric substitutions
  std::optional<Rational> numeric_a, numeric_b, numeric_w;
};

struct RunResult {
  int k = 0;
  CheckLevel level = CheckLevel::full;
  std::uint64_t seed = 0;
  std::vector<VerificationReport> reports;
  bool budget_exhausted = false;
  std::string budget_note;

  std::size_t failures() const;
};

/// Exit codes shared by the library driver and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs the suites selected by the level in dependency order.  Budgets are
/// applied to the symmetrized-product construction and the commutators that
/// consume it; for k >= 5 a finite default budget is always in force.
/// Throws std::invalid_argument for invalid k.
RunResult run_verify(const RunConfig& cfg);

int exit_code(const RunResult& result);

std::string render_text(const RunResult& result);
/// Stable-order JSON document; two runs with the same config and seed are
/// byte-identical when include_timing is false.
std::string render_structured(const RunResult& result, bool include_timing);

/// Serializes a named operator: Dr, Dphi, Hext, Xext, Y, H_proj, X_proj,
/// Y_proj, h, or an indexed A_i / Adag_i / B_i / Bdag_i / H_i.
/// Applies the config's numeric substitutions when present.
std::string dump_operator(const RunConfig& cfg, const std::string& op_id);

/// Merges structured reports (file contents), totalling by status.
/// Returns the consolidated JSON document and sets the exit code.
std::string merge_structured_reports(const std::vector<std::string>& documents, int& code);

}  // namespace ttw
