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

#include <cmath>
#include <numbers>
#include <random>

#include "ttw/coefficient.hpp"

using namespace ttw;

namespace {

Coefficient random_coefficient(const CycloFieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> exp_small(-2, 2);
  std::uniform_int_distribution<int> exp_pos(0, 2);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> pick(0, 5);
  Coefficient acc = Coefficient::zero(f);
  int n = count(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m{exp_small(rng), exp_small(rng), exp_pos(rng), exp_pos(rng), exp_small(rng)};
    acc += Coefficient::monomial(
        CyclotomicNumber::make(f, pick(rng), Rational(num(rng))), m);
  }
  // sprinkle in a pole factor through tan/cot so denominators participate
  if (pick(rng) < 2) acc = acc * Coefficient::trig_fn(f, TrigKind::tan, pick(rng));
  if (pick(rng) < 1) acc = acc * Coefficient::trig_fn(f, TrigKind::cot, pick(rng));
  return acc;
}

EvalPoint random_point(std::mt19937& rng, int k) {
  std::uniform_real_distribution<double> radius(0.6, 1.6);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> coupling(0.3, 1.7);
  EvalPoint p;
  double cell = std::numbers::pi / (2.0 * k);
  do {
    p.phi = angle(rng);
  } while (std::abs(p.phi / cell - std::round(p.phi / cell)) * cell < 0.05);
  p.r = radius(rng);
  p.a = coupling(rng);
  p.b = coupling(rng);
  p.w = coupling(rng);
  p.margin = 0.05;
  return p;
}

}  // namespace

TEST_SUITE("coefficient") {
  TEST_CASE("trig encodings") {
    auto f = CycloField::make(12);
    auto i = CyclotomicNumber::imaginary_unit(f);
    auto u2 = Coefficient::var_u(f, 2);
    auto one = Coefficient::one(f);

    // tan = -i (u^2 - 1) / (u^2 + 1): cross-multiplied form avoids division
    auto tan0 = Coefficient::trig_fn(f, TrigKind::tan, 0);
    CHECK((tan0 * (u2 + one)).equals((u2 - one) * (-i)));

    auto sec2 = Coefficient::trig_fn(f, TrigKind::sec2, 0);
    CHECK((sec2 * ((u2 + one) * (u2 + one))).equals(u2 * Rational(4)));

    auto sin0 = Coefficient::trig_fn(f, TrigKind::sin, 0);
    auto cos0 = Coefficient::trig_fn(f, TrigKind::cos, 0);
    CHECK((sin0 * sin0 + cos0 * cos0).equals(one));
    CHECK((tan0 * Coefficient::trig_fn(f, TrigKind::cot, 0)).equals(one));
  }

  TEST_CASE("shifted squared-secant sums fold onto the sector profile") {
    for (int k : {3, 5}) {
      auto f = CycloField::make(4 * k);
      Coefficient sec_sum = Coefficient::zero(f);
      Coefficient csc_sum = Coefficient::zero(f);
      for (int i = 0; i < k; ++i) {
        sec_sum += Coefficient::trig_fn(f, TrigKind::sec2, i);
        csc_sum += Coefficient::trig_fn(f, TrigKind::csc2, i);
      }
      CHECK(sec_sum.equals(Coefficient::sec2_k_phi(f) * Rational(k * k)));
      CHECK(csc_sum.equals(Coefficient::csc2_k_phi(f) * Rational(k * k)));
    }
  }

  TEST_CASE("normalization divides pole factors out of the numerator") {
    auto f = CycloField::make(12);
    auto x = Coefficient::trig_fn(f, TrigKind::sin, 1) * Coefficient::var_r(f, -2) +
             Coefficient::var_a(f) * Coefficient::var_u(f, -1);
    auto u2p1 = Coefficient::var_u(f, 2) + Coefficient::one(f);
    // multiplying and dividing by (u^2+1) must round-trip to the same value
    auto blown = Coefficient::parse(f, "(" + (x * u2p1).to_string() + ") / (u^2 + 1)");
    CHECK(blown.equals(x));
    CHECK(blown.to_string() == x.to_string());
    CHECK(blown.denominator_trivial());
  }

  TEST_CASE("derivatives") {
    auto f = CycloField::make(12);
    auto u = Coefficient::var_u(f);
    CHECK(u.d_phi().equals(u * CyclotomicNumber::imaginary_unit(f)));
    CHECK(Coefficient::trig_fn(f, TrigKind::tan, 0)
              .d_phi()
              .equals(Coefficient::trig_fn(f, TrigKind::sec2, 0)));
    CHECK(Coefficient::var_r(f, -1).d_r().equals(Coefficient::var_r(f, -2) * Rational(-1)));
    std::mt19937 rng(5);
    for (int t = 0; t < 30; ++t) {
      auto x = random_coefficient(f, rng);
      CHECK(x.d_phi().d_r().equals(x.d_r().d_phi()));
    }
  }

  TEST_CASE("dihedral substitutions") {
    auto f = CycloField::make(12);
    auto cos0 = Coefficient::trig_fn(f, TrigKind::cos, 0);
    auto tan0 = Coefficient::trig_fn(f, TrigKind::tan, 0);
    auto sin0 = Coefficient::trig_fn(f, TrigKind::sin, 0);

    Coefficient shifted = cos0;
    for (int i = 0; i < 3; ++i) shifted = shifted.substitute(SubstAction::shift_R);
    CHECK(shifted.equals(-cos0));
    CHECK(tan0.substitute(SubstAction::reflect_I).equals(-tan0));
    CHECK(sin0.substitute(SubstAction::conjugate).equals(sin0));

    std::mt19937 rng(17);
    for (int t = 0; t < 25; ++t) {
      auto x = random_coefficient(f, rng);
      Coefficient y = x;
      for (int i = 0; i < 6; ++i) y = y.substitute(SubstAction::shift_R);
      CHECK(y.equals(x));
      CHECK(x.substitute(SubstAction::reflect_I).substitute(SubstAction::reflect_I).equals(x));
      CHECK(x.substitute(SubstAction::conjugate).substitute(SubstAction::conjugate).equals(x));
      // group substitution composes reflect-then-rotate
      CHECK(x.substitute_group(2, 1).equals(
          x.substitute(SubstAction::reflect_I).substitute(SubstAction::shift_R).substitute(
              SubstAction::shift_R)));
    }
  }

  TEST_CASE("ring axioms and equality") {
    auto f = CycloField::make(12);
    std::mt19937 rng(23);
    for (int t = 0; t < 25; ++t) {
      auto x = random_coefficient(f, rng);
      auto y = random_coefficient(f, rng);
      auto z = random_coefficient(f, rng);
      CHECK(((x + y) + z).equals(x + (y + z)));
      CHECK((x * (y + z)).equals(x * y + x * z));
      CHECK(((x * y) * z).equals(x * (y * z)));
      CHECK((x * y).equals(y * x));
      CHECK((x - x).is_zero());
    }
  }

  TEST_CASE("numeric evaluation") {
    auto f = CycloField::make(12);
    auto tan0 = Coefficient::trig_fn(f, TrigKind::tan, 0);
    EvalPoint p;
    p.phi = std::numbers::pi / 7;
    CHECK(std::abs(tan0.eval(p) - std::tan(std::numbers::pi / 7)) < 1e-12);

    auto sin0 = Coefficient::trig_fn(f, TrigKind::sin, 0);
    auto cos0 = Coefficient::trig_fn(f, TrigKind::cos, 0);
    CHECK(std::abs((sin0 * sin0 + cos0 * cos0).eval(p) - 1.0) < 1e-14);

    // the folded secant identity, sampled
    Coefficient sum = Coefficient::zero(f);
    for (int i = 0; i < 3; ++i) sum += Coefficient::trig_fn(f, TrigKind::sec2, i);
    std::mt19937 rng(29);
    for (int t = 0; t < 50; ++t) {
      EvalPoint q = random_point(rng, 3);
      double direct = 0.0;
      for (int i = 0; i < 3; ++i) {
        double c = std::cos(q.phi + i * std::numbers::pi / 3);
        direct += 1.0 / (c * c);
      }
      CHECK(std::abs(sum.eval(q) - direct) / std::abs(direct) < 1e-10);
    }

    // products evaluate to products
    for (int t = 0; t < 20; ++t) {
      auto x = random_coefficient(f, rng);
      auto y = random_coefficient(f, rng);
      EvalPoint q = random_point(rng, 3);
      auto lhs = (x * y).eval(q);
      auto rhs = x.eval(q) * y.eval(q);
      double scale = std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
      CHECK(std::abs(lhs - rhs) / scale < 1e-12);
    }

    EvalPoint pole;
    pole.phi = 0.01;  // hugs the wall at phi = 0
    CHECK_THROWS_AS((void)tan0.eval(pole), PoleProximityError);
    EvalPoint small_r;
    small_r.phi = 0.4;
    small_r.r = 1e-6;
    CHECK_THROWS_AS((void)(tan0 * Coefficient::var_r(f, -1)).eval(small_r),
                    PoleProximityError);
  }

  TEST_CASE("rendering round trip") {
    auto f = CycloField::make(12);
    std::mt19937 rng(31);
    for (int t = 0; t < 40; ++t) {
      auto x = random_coefficient(f, rng);
      CAPTURE(x.to_string());
      CHECK(Coefficient::parse(f, x.to_string()).equals(x));
    }
    CHECK(Coefficient::parse(f, "0").is_zero());
    // frequency powers render through w = s^2/2 and round trip
    auto mixed = Coefficient::omega(f, 2) * Coefficient::var_s(f, -1) * Coefficient::var_a(f);
    CHECK(Coefficient::parse(f, mixed.to_string()).equals(mixed));
    CHECK_THROWS_AS(Coefficient::parse(f, "(1) / (u^3 + 1)"), ParseError);
  }

  TEST_CASE("mixed k is rejected") {
    auto f = CycloField::make(12);
    auto g = CycloField::make(20);
    CHECK_THROWS_AS((void)(Coefficient::one(f) * Coefficient::one(g)), std::invalid_argument);
    Coefficient x = Coefficient::one(f);
    CHECK_THROWS_AS(x += Coefficient::one(g), std::invalid_argument);
  }

  TEST_CASE("numeric substitution") {
    auto f = CycloField::make(12);
    auto expr = Coefficient::var_a(f, 2) * Coefficient::var_r(f) +
                Coefficient::var_b(f) * Coefficient::omega(f);
    auto sub = expr.substitute_numeric(Rational(1, 2), Rational(3), std::nullopt);
    CHECK(sub.equals(Coefficient::var_r(f) * Rational(1, 4) +
                     Coefficient::omega(f) * Rational(3)));
    auto w_sub = Coefficient::omega(f, 2).substitute_numeric(std::nullopt, std::nullopt,
                                                             Rational(2));
    CHECK(w_sub.equals(Coefficient::scalar(f, Rational(4))));
    // odd powers of s keep the symbolic leftover
    auto odd = Coefficient::var_s(f, 3).substitute_numeric(std::nullopt, std::nullopt,
                                                           Rational(2));
    CHECK(odd.equals(Coefficient::var_s(f) * Rational(4)));
  }
}
