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

#include "ttw/boson.hpp"

using namespace ttw;

namespace {

void expect_all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.passed());
  }
}

// The base annihilation pair written out longhand, independent of the
// builder's internal profile plumbing.
OperatorExpr manual_base_A(const TTWParams& P, bool dagger) {
  const auto& f = P.field;
  Coefficient cos0 = Coefficient::trig_fn(f, TrigKind::cos, 0);
  Coefficient sin0 = Coefficient::trig_fn(f, TrigKind::sin, 0);
  Coefficient wr = Coefficient::omega(f) * Coefficient::var_r(f);
  int sign = dagger ? -1 : 1;
  OperatorExpr out = OperatorExpr::from_coefficient(cos0 * wr);
  out += build_Dr(P).scale(cos0 * Rational(sign));
  out += build_Dphi(P).scale(sin0 * Coefficient::var_r(f, -1) * Rational(-sign));
  return out.scale(Coefficient::var_s(f, -1));
}

OperatorExpr manual_base_B(const TTWParams& P, bool dagger) {
  const auto& f = P.field;
  Coefficient cos0 = Coefficient::trig_fn(f, TrigKind::cos, 0);
  Coefficient sin0 = Coefficient::trig_fn(f, TrigKind::sin, 0);
  Coefficient wr = Coefficient::omega(f) * Coefficient::var_r(f);
  int sign = dagger ? -1 : 1;
  OperatorExpr out = OperatorExpr::from_coefficient(sin0 * wr);
  out += build_Dr(P).scale(sin0 * Rational(sign));
  out += build_Dphi(P).scale(cos0 * Coefficient::var_r(f, -1) * Rational(sign));
  return out.scale(Coefficient::var_s(f, -1));
}

}  // namespace

TEST_SUITE("boson") {
  TEST_CASE("base pair matches the longhand construction") {
    auto P = TTWParams::make(3);
    CHECK(build_A(P, 0, false).equals(manual_base_A(P, false)));
    CHECK(build_A(P, 0, true).equals(manual_base_A(P, true)));
    CHECK(build_B(P, 0, false).equals(manual_base_B(P, false)));
    CHECK(build_B(P, 0, true).equals(manual_base_B(P, true)));
  }

  TEST_CASE("adjoints pair off and indices extend alternately") {
    auto P = TTWParams::make(3);
    for (int i = 0; i < 3; ++i)
      CHECK(build_A(P, i, false).adjoint().equals(build_A(P, i, true)));
    CHECK(build_A(P, 5, false).equals(-build_A(P, 2, false)));
    CHECK(build_A(P, 6, false).equals(build_A(P, 0, false)));
    CHECK(build_A(P, -1, false).equals(-build_A(P, 2, false)));
    CHECK(build_B(P, 4, true).equals(-build_B(P, 1, true)));
  }

  TEST_CASE("rotation ladder and reflection action") {
    auto P = TTWParams::make(3);
    auto rot = GroupElement::rotation(1, P.two_k());
    for (int i = 0; i < 3; ++i) {
      CHECK(build_A(P, i, false).conjugate_by_group(rot).equals(build_A(P, i + 1, false)));
      CHECK(build_A(P, i, false)
                .conjugate_by_group(GroupElement::reflection())
                .equals(-build_A(P, 3 - i, false)));
    }
    CHECK(build_B(P, 0, false)
              .conjugate_by_group(GroupElement::reflection())
              .equals(-build_B(P, 0, false)));
  }

  TEST_CASE("B resolves over the A basis") {
    auto P = TTWParams::make(3);
    for (int i = 0; i < 3; ++i) {
      CHECK(build_B_from_A(P, i, false).equals(build_B(P, i, false)));
      CHECK(build_B_from_A(P, i, true).equals(build_B(P, i, true)));
    }
  }

  TEST_CASE("linear relations among the dependent modes") {
    auto P = TTWParams::make(3);
    // the single k = 3 dependency A_0 - A_1 + A_2 = 0
    auto combo = build_A(P, 0, false) - build_A(P, 1, false) + build_A(P, 2, false);
    CHECK(combo.is_zero());
    expect_all_pass(check_linear_relations(P));
  }

  TEST_CASE("deformed boson commutators close exactly") {
    auto P = TTWParams::make(3);
    expect_all_pass(check_boson_consistency(P));
    expect_all_pass(check_boson_commutators(P));
    // coupling-free reduction: [A_i, A_j^+] -> cos((j-i) pi/k)
    auto red = commutator(build_A(P, 0, false), build_A(P, 1, true)).set_ab_zero();
    CHECK(red.equals(OperatorExpr::from_coefficient(
        Coefficient::scalar(CyclotomicNumber::cos_angle(P.field, 1)))));
  }

  TEST_CASE("oscillator Hamiltonians") {
    auto P = TTWParams::make(3);
    expect_all_pass(check_H_structure(P));
    // the closed form of [H_0, H_i] vanishes termwise at i = 0
    CHECK(oscillator_commutator_rhs(P, 0).is_zero());
  }

  TEST_CASE("oscillator commutators and integrals of motion") {
    auto P = TTWParams::make(3);
    expect_all_pass(check_H_commutators(P));
  }

  TEST_CASE("symmetrized product respects the budget") {
    auto P = TTWParams::make(3);
    Budget tiny;
    tiny.max_terms = 10;
    CHECK_THROWS_AS((void)build_Y(P, &tiny), BudgetExceededError);
    Budget no_time;
    no_time.max_seconds = 1e-9;
    CHECK_THROWS_AS((void)build_Y(P, &no_time), BudgetExceededError);
  }
}
