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

#include "ttw/driver.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace ttw {

using json = nlohmann::ordered_json;

CheckLevel parse_level(const std::string& name) {
  if (name == "section2") return CheckLevel::section2;
  if (name == "boson") return CheckLevel::boson;
  if (name == "hamiltonians") return CheckLevel::hamiltonians;
  if (name == "full") return CheckLevel::full;
  throw std::invalid_argument("unknown level '" + name +
                              "' (expected section2, boson, hamiltonians or full)");
}

const char* level_name(CheckLevel level) {
  switch (level) {
    case CheckLevel::section2: return "section2";
    case CheckLevel::boson: return "boson";
    case CheckLevel::hamiltonians: return "hamiltonians";
    case CheckLevel::full: return "full";
  }
  return "?";
}

std::size_t RunResult::failures() const {
  std::size_t n = 0;
  for (const auto& r : reports)
    if (!r.passed()) ++n;
  return n;
}

RunResult run_verify(const RunConfig& cfg) {
  TTWParams P = TTWParams::make(cfg.k);
  RunResult result;
  result.k = cfg.k;
  result.level = cfg.level;
  result.seed = cfg.seed;

  // Budgets are mandatory once the symmetrized product gets combinatorially
  // heavy; k = 3 runs unlimited unless the caller caps it.
  Budget budget;
  budget.max_terms = cfg.budget_terms;
  budget.max_seconds = cfg.budget_seconds;
  if (cfg.k >= 5) {
    if (budget.max_terms == 0) budget.max_terms = 4'000'000;
    if (budget.max_seconds == 0.0) budget.max_seconds = 600.0;
  }
  const Budget* bp =
      (budget.max_terms || budget.max_seconds > 0.0) ? &budget : nullptr;

  auto append = [&](std::vector<VerificationReport> v) {
    for (auto& r : v) result.reports.push_back(std::move(r));
  };

  append(check_dihedral_calculus(P));
  append(check_projection(P));
  if (cfg.level >= CheckLevel::boson) {
    append(check_boson_consistency(P));
    append(check_linear_relations(P));
    append(check_boson_commutators(P));
  }
  if (cfg.level >= CheckLevel::hamiltonians) {
    append(check_H_structure(P));
    append(check_H_commutators(P));
  }
  if (cfg.level == CheckLevel::full) {
    OperatorExpr y;
    try {
      check_superintegrability(P, bp, result.reports, &y);
    } catch (const BudgetExceededError& e) {
      result.budget_exhausted = true;
      result.budget_note = e.what();
    }
    append(check_reduction(P, y.detached() ? nullptr : &y));
    append(check_oracle(P, 50, 6, cfg.seed));
  }

  for (auto& r : result.reports)
    if (!r.seed) r.seed = cfg.seed;
  return result;
}

int exit_code(const RunResult& result) {
  if (result.failures()) return kExitCheckFailed;
  if (result.budget_exhausted) return kExitBudget;
  return kExitOk;
}

std::string render_text(const RunResult& result) {
  std::ostringstream os;
  os << "verify k=" << result.k << " level=" << level_name(result.level)
     << " seed=" << result.seed << "\n";
  for (const auto& r : result.reports) {
    os << "  " << (r.passed() ? "PASS" : "FAIL") << "  " << std::left << std::setw(36) << r.name
       << std::right << "  residual=" << r.residual_terms << "  " << std::fixed
       << std::setprecision(1) << r.wall_ms << " ms\n";
    if (!r.passed() && r.detail) os << "        " << *r.detail << "\n";
  }
  std::size_t fails = result.failures();
  os << "checks: " << result.reports.size() << ", failures: " << fails;
  if (result.budget_exhausted) os << ", budget exhausted (" << result.budget_note << ")";
  os << "\n";
  return os.str();
}

std::string render_structured(const RunResult& result, bool include_timing) {
  json doc;
  doc["k"] = result.k;
  doc["level"] = level_name(result.level);
  doc["seed"] = result.seed;
  doc["budget_exhausted"] = result.budget_exhausted;
  if (result.budget_exhausted) doc["budget_note"] = result.budget_note;
  doc["checks"] = json::array();
  for (const auto& r : result.reports) {
    json c;
    c["name"] = r.name;
    c["k"] = r.k;
    c["status"] = VerificationReport::status_name(r.status);
    c["residual_terms"] = r.residual_terms;
    if (include_timing) c["wall_ms"] = r.wall_ms;
    c["seed"] = r.seed ? *r.seed : 0;
    if (r.detail && !r.passed()) c["detail"] = *r.detail;
    doc["checks"].push_back(std::move(c));
  }
  return doc.dump(2) + "\n";
}

std::string dump_operator(const RunConfig& cfg, const std::string& op_id) {
  TTWParams P = TTWParams::make(cfg.k);
  Budget budget;
  budget.max_terms = cfg.budget_terms;
  budget.max_seconds = cfg.budget_seconds;
  if (cfg.k >= 5) {
    if (budget.max_terms == 0) budget.max_terms = 4'000'000;
    if (budget.max_seconds == 0.0) budget.max_seconds = 600.0;
  }
  const Budget* bp =
      (budget.max_terms || budget.max_seconds > 0.0) ? &budget : nullptr;

  auto indexed = [&](const std::string& prefix, long& idx) {
    if (op_id.rfind(prefix, 0) != 0) return false;
    std::string tail = op_id.substr(prefix.size());
    if (tail.empty()) return false;
    try {
      std::size_t used = 0;
      idx = std::stol(tail, &used);
      return used == tail.size();
    } catch (...) {
      return false;
    }
  };

  OperatorExpr op;
  long idx = 0;
  if (op_id == "Dr") op = build_Dr(P);
  else if (op_id == "Dphi") op = build_Dphi(P);
  else if (op_id == "Hext") op = build_extended_H(P);
  else if (op_id == "Xext") op = build_extended_X(P);
  else if (op_id == "h") op = build_plain_h(P);
  else if (op_id == "Y") op = build_Y(P, bp);
  else if (op_id == "H_proj") op = build_extended_H(P).project_identity();
  else if (op_id == "X_proj") op = build_extended_X(P).project_identity();
  else if (op_id == "Y_proj") op = build_Y(P, bp).project_identity();
  else if (indexed("A_", idx)) op = build_A(P, idx, false);
  else if (indexed("Adag_", idx)) op = build_A(P, idx, true);
  else if (indexed("B_", idx)) op = build_B(P, idx, false);
  else if (indexed("Bdag_", idx)) op = build_B(P, idx, true);
  else if (indexed("H_", idx)) op = build_H(P, idx);
  else
    throw std::invalid_argument(
        "unknown operator id '" + op_id +
        "' (expected Dr, Dphi, Hext, Xext, Y, H_proj, X_proj, Y_proj, h, or indexed "
        "A_i, Adag_i, B_i, Bdag_i, H_i)");

  if (cfg.numeric_a || cfg.numeric_b || cfg.numeric_w)
    op = op.substitute_numeric(cfg.numeric_a, cfg.numeric_b, cfg.numeric_w);
  return op.to_string();
}

std::string merge_structured_reports(const std::vector<std::string>& documents, int& code) {
  json out;
  out["reports"] = documents.size();
  std::size_t pass = 0, fail = 0;
  bool budget = false;
  json failures = json::array();
  for (const auto& text : documents) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("malformed report file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("checks") || !doc["checks"].is_array())
      throw std::invalid_argument("malformed report file: missing checks array");
    if (doc.value("budget_exhausted", false)) budget = true;
    for (const auto& c : doc["checks"]) {
      std::string status = c.value("status", "fail");
      if (status == "exact-pass") ++pass;
      else {
        ++fail;
        failures.push_back(c.value("name", "?"));
      }
    }
  }
  out["totals"] = {{"exact-pass", pass}, {"fail", fail}};
  out["budget_exhausted"] = budget;
  if (!failures.empty()) out["failures"] = failures;
  code = fail ? kExitCheckFailed : (budget ? kExitBudget : kExitOk);
  return out.dump(2) + "\n";
}

}  // namespace ttw
