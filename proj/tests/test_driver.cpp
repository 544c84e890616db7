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

#include <doctest.h>

#include "ttw/driver.hpp"

using namespace ttw;

TEST_SUITE("driver") {
  TEST_CASE("level parsing") {
    CHECK(parse_level("section2") == CheckLevel::section2);
    CHECK(parse_level("full") == CheckLevel::full);
    CHECK_THROWS_AS(parse_level("everything"), std::invalid_argument);
  }

  TEST_CASE("invalid k surfaces as a usage problem") {
    RunConfig cfg;
    cfg.k = 1;
    CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);
    cfg.k = 4;
    CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);
  }

  TEST_CASE("dihedral level run passes and reports cleanly") {
    RunConfig cfg;
    cfg.k = 3;
    cfg.level = CheckLevel::section2;
    cfg.seed = 42;
    RunResult res = run_verify(cfg);
    CHECK(res.failures() == 0);
    CHECK(exit_code(res) == kExitOk);
    CHECK(res.reports.size() > 20);
    for (const auto& r : res.reports) {
      CHECK(r.k == 3);
      CHECK(r.seed);
      CHECK(*r.seed == 42);
    }
    auto text = render_text(res);
    CHECK(text.find("PASS") != std::string::npos);
    CHECK(text.find("FAIL") == std::string::npos);
  }

  TEST_CASE("structured reports are byte-stable without timing") {
    RunConfig cfg;
    cfg.k = 3;
    cfg.level = CheckLevel::boson;
    cfg.seed = 7;
    auto a = render_structured(run_verify(cfg), false);
    auto b = render_structured(run_verify(cfg), false);
    CHECK(a == b);
    CHECK(a.find("\"wall_ms\"") == std::string::npos);
    auto timed = render_structured(run_verify(cfg), true);
    CHECK(timed.find("\"wall_ms\"") != std::string::npos);
  }

  TEST_CASE("operator dumps") {
    RunConfig cfg;
    cfg.k = 3;
    auto dr = dump_operator(cfg, "Dr");
    CHECK(dr.find("* Dr^1 * Dphi^0 * R^0 * I^0") != std::string::npos);
    auto hext = dump_operator(cfg, "Hext");
    CHECK(hext.find("Dr^2") != std::string::npos);
    auto a0 = dump_operator(cfg, "A_0");
    CHECK(a0.find("s") != std::string::npos);

    // setting a = b = 0 in the dump collapses the invariant Hamiltonian onto
    // the plain polar oscillator
    cfg.numeric_a = Rational(0);
    cfg.numeric_b = Rational(0);
    auto plain = dump_operator(cfg, "Hext");
    RunConfig plain_cfg;
    plain_cfg.k = 3;
    CHECK(plain == dump_operator(plain_cfg, "h"));
    cfg.numeric_a.reset();
    cfg.numeric_b.reset();

    CHECK_THROWS_AS(dump_operator(cfg, "nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(dump_operator(cfg, "A_"), std::invalid_argument);
  }

  TEST_CASE("projected dumps match the closed-form targets") {
    RunConfig cfg;
    cfg.k = 3;
    auto proj = dump_operator(cfg, "H_proj");
    auto P = TTWParams::make(3);
    CHECK(proj == build_projected_H_target(P).to_string());
  }

  TEST_CASE("report merging") {
    RunConfig cfg;
    cfg.k = 3;
    cfg.level = CheckLevel::section2;
    auto doc = render_structured(run_verify(cfg), true);

    int code = -1;
    auto merged = merge_structured_reports({doc, doc}, code);
    CHECK(code == kExitOk);
    CHECK(merged.find("\"fail\": 0") != std::string::npos);

    // empty merge is a clean zero
    code = -1;
    auto empty = merge_structured_reports({}, code);
    CHECK(code == kExitOk);
    CHECK(empty.find("\"reports\": 0") != std::string::npos);

    // a failing check drives the exit code
    std::string failing = R"({"k":3,"level":"section2","seed":1,"budget_exhausted":false,
      "checks":[{"name":"broken","k":3,"status":"fail","residual_terms":2,"seed":1}]})";
    code = -1;
    auto bad = merge_structured_reports({doc, failing}, code);
    CHECK(code == kExitCheckFailed);
    CHECK(bad.find("broken") != std::string::npos);

    CHECK_THROWS_AS(merge_structured_reports({"not json"}, code), std::invalid_argument);
    CHECK_THROWS_AS(merge_structured_reports({"{\"k\": 3}"}, code), std::invalid_argument);
  }
}
