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

#include <random>

#include "ttw/boson.hpp"

using namespace ttw;

namespace {

// A pool of operators the verification pipeline actually produces, for
// property tests over random picks.
std::vector<OperatorExpr> pipeline_pool(const TTWParams& P) {
  const auto& f = P.field;
  return {
      OperatorExpr::deriv_r(f),
      OperatorExpr::deriv_phi(f),
      build_R(P),
      build_I(P),
      OperatorExpr::from_coefficient(Coefficient::trig_fn(f, TrigKind::cos, 0)),
      OperatorExpr::from_coefficient(Coefficient::var_r(f)),
      build_Dr(P),
      build_Dphi(P),
      build_A(P, 0, false),
      build_A(P, 1, true),
      build_B(P, 2, false),
  };
}

}  // namespace

TEST_SUITE("operator-algebra") {
  TEST_CASE("group element composition") {
    const int two_k = 6;
    GroupElement r1{1, 0}, i{0, 1};
    auto ir = i.compose(r1, two_k);
    // I R = R^(2k-1) I
    CHECK(ir == GroupElement{two_k - 1, 1});
    CHECK(r1.compose(r1.inverse(two_k), two_k).is_identity());
    GroupElement ri{3, 1};
    CHECK(ri.compose(ri.inverse(two_k), two_k).is_identity());
    CHECK(ri.adjoint(two_k) == ri);         // reflections are self-adjoint
    CHECK(r1.adjoint(two_k) == GroupElement{two_k - 1, 0});
  }

  TEST_CASE("normal ordering basics") {
    auto P = TTWParams::make(3);
    const auto& f = P.field;
    auto dr = OperatorExpr::deriv_r(f);
    auto dphi = OperatorExpr::deriv_phi(f);
    auto r_op = OperatorExpr::from_coefficient(Coefficient::var_r(f));
    auto id = OperatorExpr::identity(f);

    CHECK(commutator(dr, r_op).equals(id));
    CHECK(commutator(dr, dphi).is_zero());

    // {d_phi, cos} = 2 cos d_phi - sin
    auto cos_op = OperatorExpr::from_coefficient(Coefficient::trig_fn(f, TrigKind::cos, 0));
    auto sin_op = OperatorExpr::from_coefficient(Coefficient::trig_fn(f, TrigKind::sin, 0));
    auto lhs = anticommutator(dphi, cos_op);
    auto rhs = (cos_op * dphi).scale(Rational(2)) - sin_op;
    CHECK(lhs.equals(rhs));

    // I d_phi = -d_phi I
    auto i_op = build_I(P);
    CHECK((i_op * dphi).equals(-(dphi * i_op)));

    CHECK(commutator(build_Dr(P), build_Dr(P)).is_zero());
    CHECK(OperatorExpr::zero(f).max_order() == -1);
    CHECK(OperatorExpr::identity(f).project_identity().equals(OperatorExpr::identity(f)));
  }

  TEST_CASE("coefficient lookup") {
    auto P = TTWParams::make(3);
    auto hk = build_projected_H_target(P);
    CHECK(hk.coefficient_of(2, 0).equals(Coefficient::scalar(P.field, Rational(-1))));
    CHECK(hk.coefficient_of(0, 2).equals(Coefficient::var_r(P.field, -2) * Rational(-1)));
    CHECK(hk.coefficient_of(5, 5).is_zero());
    CHECK(hk.max_order() == 2);
  }

  TEST_CASE("associativity on pipeline operators") {
    auto P = TTWParams::make(3);
    auto pool = pipeline_pool(P);
    std::mt19937 rng(41);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 40; ++t) {
      const auto& x = pool[pick(rng)];
      const auto& y = pool[pick(rng)];
      const auto& z = pool[pick(rng)];
      CHECK(((x * y) * z).equals(x * (y * z)));
    }
  }

  TEST_CASE("adjoint is an involutive antihomomorphism") {
    auto P = TTWParams::make(3);
    auto pool = pipeline_pool(P);
    std::mt19937 rng(43);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    CHECK(OperatorExpr::deriv_phi(P.field).adjoint().equals(
        -OperatorExpr::deriv_phi(P.field)));
    for (int t = 0; t < 30; ++t) {
      const auto& x = pool[pick(rng)];
      const auto& y = pool[pick(rng)];
      CHECK(x.adjoint().adjoint().equals(x));
      CHECK((x * y).adjoint().equals(y.adjoint() * x.adjoint()));
    }
  }

  TEST_CASE("group conjugation composes contravariantly") {
    auto P = TTWParams::make(3);
    auto pool = pipeline_pool(P);
    std::mt19937 rng(47);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> rot(0, 5);
    std::uniform_int_distribution<int> refl(0, 1);
    for (int t = 0; t < 25; ++t) {
      const auto& x = pool[pick(rng)];
      GroupElement g{rot(rng), refl(rng)};
      GroupElement h{rot(rng), refl(rng)};
      auto lhs = x.conjugate_by_group(h).conjugate_by_group(g);
      auto rhs = x.conjugate_by_group(g.compose(h, P.two_k()));
      CHECK(lhs.equals(rhs));
    }
  }

  TEST_CASE("projection is multiplicative on invariant pairs") {
    auto P = TTWParams::make(3);
    auto hext = build_extended_H(P);
    auto xext = build_extended_X(P);
    auto lhs = (hext * xext).project_identity();
    auto rhs = hext.project_identity() * xext.project_identity();
    CHECK(lhs.equals(rhs));
  }

  TEST_CASE("serialization is canonical and deterministic") {
    auto P = TTWParams::make(3);
    auto x = build_Dphi(P) * build_Dr(P);
    auto y = build_Dphi(P) * build_Dr(P);
    CHECK(x.to_string() == y.to_string());
    CHECK(OperatorExpr::zero(P.field).to_string() == "0\n");
    // every line carries the full factor skeleton
    auto s = build_Dr(P).to_string();
    CHECK(s.find("* Dr^1 * Dphi^0 * R^0 * I^0") != std::string::npos);
  }

  TEST_CASE("budget enforcement") {
    auto P = TTWParams::make(3);
    Budget tiny;
    tiny.max_terms = 3;
    auto dphi = build_Dphi(P);
    CHECK_THROWS_AS((void)dphi.multiply(dphi, &tiny), BudgetExceededError);
  }

  TEST_CASE("mixed k operands are rejected") {
    auto P3 = TTWParams::make(3);
    auto P5 = TTWParams::make(5);
    CHECK_THROWS_AS((void)(build_Dr(P3) * build_Dr(P5)), std::invalid_argument);
  }

  TEST_CASE("scaled reduction helpers") {
    auto P = TTWParams::make(3);
    auto dr = build_Dr(P);
    CHECK(dr.set_ab_zero().equals(OperatorExpr::deriv_r(P.field)));
    auto sub = dr.substitute_numeric(Rational(0), Rational(0), std::nullopt);
    CHECK(sub.equals(OperatorExpr::deriv_r(P.field)));
  }
}
