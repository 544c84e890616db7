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

#include "ttw/dunkl.hpp"

using namespace ttw;

namespace {

void expect_all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.passed());
    CHECK(r.residual_terms == 0);
  }
}

}  // namespace

TEST_SUITE("dunkl") {
  TEST_CASE("family parameters are validated") {
    CHECK_NOTHROW(TTWParams::make(3));
    CHECK_NOTHROW(TTWParams::make(5));
    CHECK_NOTHROW(TTWParams::make(7));
    CHECK_THROWS_AS(TTWParams::make(1), std::invalid_argument);
    CHECK_THROWS_AS(TTWParams::make(2), std::invalid_argument);
    CHECK_THROWS_AS(TTWParams::make(4), std::invalid_argument);
    CHECK_THROWS_AS(TTWParams::make(-3), std::invalid_argument);
  }

  TEST_CASE("rotation and reflection generators") {
    auto P = TTWParams::make(3);
    auto R = build_R(P);
    auto I = build_I(P);
    auto id = OperatorExpr::identity(P.field);
    CHECK(R.pow(P.two_k()).equals(id));
    CHECK((I * I).equals(id));
    CHECK(R.adjoint().equals(R.pow(P.two_k() - 1)));
    CHECK(I.adjoint().equals(I));
  }

  TEST_CASE("coupling-free reduction of the deformed derivatives") {
    auto P = TTWParams::make(3);
    CHECK(build_Dr(P).set_ab_zero().equals(OperatorExpr::deriv_r(P.field)));
    CHECK(build_Dphi(P).set_ab_zero().equals(OperatorExpr::deriv_phi(P.field)));
    CHECK(commutator(build_Dr(P), build_Dphi(P)).set_ab_zero().is_zero());
  }

  TEST_CASE("radial derivative adjoint and angular antisymmetry") {
    auto P = TTWParams::make(3);
    auto dr = build_Dr(P);
    auto dphi = build_Dphi(P);
    const auto& f = P.field;
    CHECK(dphi.adjoint().equals(-dphi));
    auto target = -dr - (OperatorExpr::identity(f) +
                         build_exchange_block(P).scale(Rational(2)))
                            .scale(Coefficient::var_r(f, -1));
    CHECK(dr.adjoint().equals(target));
    CHECK(dphi.conjugate_by_group(GroupElement::reflection()).equals(-dphi));
  }

  TEST_CASE("full dihedral calculus suite") {
    for (int k : {3, 5}) {
      auto P = TTWParams::make(k);
      expect_all_pass(check_dihedral_calculus(P));
    }
  }

  TEST_CASE("projection suite and invariance") {
    auto P = TTWParams::make(3);
    expect_all_pass(check_projection(P));

    auto hext = build_extended_H(P);
    CHECK(hext.project_identity().equals(build_projected_H_target(P)));
    for (int rot = 0; rot < P.two_k(); ++rot)
      for (int refl = 0; refl < 2; ++refl)
        CHECK(hext.conjugate_by_group(GroupElement{rot, refl}).equals(hext));
    CHECK(commutator(build_extended_X(P), hext).is_zero());
  }

  TEST_CASE("plain oscillator reduction of the invariant Hamiltonian") {
    auto P = TTWParams::make(3);
    CHECK(build_extended_H(P).set_ab_zero().equals(build_plain_h(P)));
  }

  TEST_CASE("operator orders") {
    auto P = TTWParams::make(3);
    CHECK(build_extended_H(P).max_order() == 2);
    CHECK(build_extended_X(P).max_order() == 2);
    CHECK(build_Dr(P).max_order() == 1);
    CHECK(build_Dphi(P).max_order() == 1);
  }
}
