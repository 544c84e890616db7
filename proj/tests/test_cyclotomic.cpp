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

#include <complex>
#include <random>

#include "ttw/cyclotomic.hpp"

using namespace ttw;

namespace {

CyclotomicNumber random_element(const CycloFieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  CyclotomicNumber acc = CyclotomicNumber::zero(f);
  for (int e = 0; e < f->degree(); ++e)
    acc += CyclotomicNumber::make(f, e, Rational(num(rng), den(rng)));
  return acc;
}

// Independent inverse oracle: solve the linear system M v = e_0 over Q by
// Gaussian elimination, where column j of M holds the coordinates of
// x * zeta^j.  This shares no code path with the extended-Euclid inverse.
CyclotomicNumber gauss_inverse(const CyclotomicNumber& x) {
  const auto& f = x.field();
  int d = f->degree();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
  for (int j = 0; j < d; ++j) {
    CyclotomicNumber col = x * CyclotomicNumber::make(f, j, Rational(1));
    for (int i = 0; i < d; ++i) m[i][j] = col.coordinates()[i];
  }
  m[0][d] = 1;  // right-hand side e_0

  // Gaussian elimination with exact rationals.
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int row = col; row < d; ++row)
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    REQUIRE(pivot >= 0);
    std::swap(m[col], m[pivot]);
    Rational p = m[col][col];
    for (int c2 = col; c2 <= d; ++c2) m[col][c2] /= p;
    for (int row = 0; row < d; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational factor = m[row][col];
      for (int c2 = col; c2 <= d; ++c2) m[row][c2] -= factor * m[col][c2];
    }
  }
  CyclotomicNumber inv = CyclotomicNumber::zero(f);
  for (int j = 0; j < d; ++j) inv += CyclotomicNumber::make(f, j, m[j][d]);
  return inv;
}

}  // namespace

TEST_SUITE("cyclotomic") {
  TEST_CASE("field orders are validated") {
    CHECK_NOTHROW(CycloField::make(12));
    CHECK_NOTHROW(CycloField::make(20));
    CHECK_NOTHROW(CycloField::make(28));
    CHECK_THROWS_AS(CycloField::make(4), std::invalid_argument);    // k = 1
    CHECK_THROWS_AS(CycloField::make(8), std::invalid_argument);    // k = 2
    CHECK_THROWS_AS(CycloField::make(16), std::invalid_argument);   // k = 4
    CHECK_THROWS_AS(CycloField::make(24), std::invalid_argument);   // k = 6 even
    CHECK_THROWS_AS(CycloField::make(13), std::invalid_argument);
  }

  TEST_CASE("root of unity basics") {
    auto f = CycloField::make(12);
    CHECK(CyclotomicNumber::make(12, 12, Rational(1)) == CyclotomicNumber::one(f));
    auto i = CyclotomicNumber::make(12, 3, Rational(1));
    CHECK(i * i == CyclotomicNumber::from_rational(f, Rational(-1)));
    auto twocos = CyclotomicNumber::make(12, 2, Rational(1)) +
                  CyclotomicNumber::make(12, -2, Rational(1));
    CHECK(twocos == CyclotomicNumber::one(f));
    CHECK(CyclotomicNumber::make(f, 2 * 12 + 5, Rational(1)) ==
          CyclotomicNumber::make(f, 5, Rational(1)));
  }

  TEST_CASE("exact trig values") {
    auto f = CycloField::make(12);
    CHECK(CyclotomicNumber::sin_angle(f, 0).is_zero());
    CHECK(CyclotomicNumber::cos_angle(f, 1) ==
          CyclotomicNumber::from_rational(f, Rational(1, 2)));
    CHECK(CyclotomicNumber::sin_angle(f, 3).is_zero());
    CHECK(CyclotomicNumber::cos_angle(f, 3) ==
          CyclotomicNumber::from_rational(f, Rational(-1)));
    for (int k : {3, 5, 7}) {
      auto fk = CycloField::make(4 * k);
      for (int j = -7; j <= 7; ++j) {
        auto s = CyclotomicNumber::sin_angle(fk, j);
        auto c = CyclotomicNumber::cos_angle(fk, j);
        CHECK(s * s + c * c == CyclotomicNumber::one(fk));
        CHECK(CyclotomicNumber::cos_angle(fk, j + k) == -c);
        CHECK(CyclotomicNumber::sin_angle(fk, j + k) == -s);
      }
    }
  }

  TEST_CASE("inverse and conjugation") {
    auto f = CycloField::make(12);
    auto half = CyclotomicNumber::cos_angle(f, 1);
    CHECK(half.inverse() == CyclotomicNumber::from_rational(f, Rational(2)));
    auto i = CyclotomicNumber::imaginary_unit(f);
    CHECK(i.conjugate() == -i);
    CHECK_THROWS_AS(CyclotomicNumber::zero(f).inverse(), DivisionByZeroError);

    auto x = CyclotomicNumber::from_rational(f, Rational(3)) +
             CyclotomicNumber::make(f, 1, Rational(1));
    CHECK(x * x.inverse() == CyclotomicNumber::one(f));
    CHECK(x.inverse() == gauss_inverse(x));
  }

  TEST_CASE("field axioms on random elements") {
    auto f = CycloField::make(12);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      auto x = random_element(f, rng);
      auto y = random_element(f, rng);
      auto z = random_element(f, rng);
      CHECK((x + y) + z == x + (y + z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x.conjugate().conjugate() == x);
      CHECK((x * y).conjugate() == x.conjugate() * y.conjugate());
      if (!x.is_zero()) {
        CHECK(x * x.inverse() == CyclotomicNumber::one(f));
        CHECK(x.inverse() == gauss_inverse(x));
      }
    }
  }

  TEST_CASE("numeric embedding tracks exact arithmetic") {
    auto f = CycloField::make(20);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> op(0, 2);
    for (int trial = 0; trial < 60; ++trial) {
      CyclotomicNumber exact = random_element(f, rng);
      std::complex<double> approx = exact.to_complex();
      for (int depth = 0; depth < 8; ++depth) {
        CyclotomicNumber next = random_element(f, rng);
        switch (op(rng)) {
          case 0: exact += next; approx += next.to_complex(); break;
          case 1: exact -= next; approx -= next.to_complex(); break;
          default: exact = exact * next; approx *= next.to_complex(); break;
        }
      }
      double scale = std::max(1.0, std::abs(approx));
      CHECK(std::abs(exact.to_complex() - approx) / scale < 1e-12);
    }
  }

  TEST_CASE("rendering round trip") {
    auto f = CycloField::make(12);
    auto parsed = CyclotomicNumber::parse(f, "1/2*zeta^2 - 3*zeta^0");
    CHECK(parsed == CyclotomicNumber::make(f, 2, Rational(1, 2)) +
                        CyclotomicNumber::from_rational(f, Rational(-3)));
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      auto x = random_element(f, rng);
      CHECK(CyclotomicNumber::parse(f, x.to_string()) == x);
    }
    CHECK(CyclotomicNumber::parse(f, "0").is_zero());
    CHECK_THROWS(CyclotomicNumber::parse(f, "zeta^"));
  }

  TEST_CASE("mixed fields are rejected") {
    auto f12 = CycloField::make(12);
    auto f20 = CycloField::make(20);
    auto x = CyclotomicNumber::one(f12);
    auto y = CyclotomicNumber::one(f20);
    CHECK_THROWS_AS((void)(x * y), std::invalid_argument);
  }
}
