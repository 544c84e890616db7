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

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace ttw {

using Rational = mpq_class;

class CycloField;
using CycloFieldPtr = std::shared_ptr<const CycloField>;

/// The cyclotomic field Q(zeta_N) with N = 4k for odd k >= 3.
///
/// zeta denotes the primitive N-th root of unity exp(i*pi/(2k)).  With this
/// choice the field contains the imaginary unit i = zeta^k and every value
/// sin(j*pi/k), cos(j*pi/k), which is all the scalar arithmetic the dihedral
/// operator calculus needs.  Elements live in the power basis
/// zeta^0, ..., zeta^(phi(N)-1) reduced modulo the N-th cyclotomic polynomial,
/// so arithmetic is exact and equality is coordinate-wise.
///
/// One field instance exists per order; CycloField::make returns the shared
/// instance holding the reduction tables.
class CycloField : public std::enable_shared_from_this<CycloField> {
public:
  /// Returns the field of the given order. Throws std::invalid_argument
  /// unless order = 4k with k odd and >= 3.
  static CycloFieldPtr make(int order);

  int order() const { return order_; }    // N = 4k
  int k() const { return k_; }            // odd, >= 3
  int degree() const { return degree_; }  // phi(N)

  /// Monic minimal polynomial of zeta (the N-th cyclotomic polynomial),
  /// little-endian, size degree()+1.
  const std::vector<Rational>& min_poly() const { return min_poly_; }

  /// Power-basis coordinates of zeta^m for any integer m (reduced mod N).
  const std::vector<Rational>& zeta_power(long m) const;

  /// Reduction row for zeta^e, degree() <= e <= 2*degree()-2.
  const std::vector<Rational>& reduction_row(int e) const;

private:
  CycloField(int order, int k);

  int order_;
  int k_;
  int degree_;
  std::vector<Rational> min_poly_;
  std::vector<std::vector<Rational>> pow_;  // zeta^m, m in [0, order)
  std::vector<std::vector<Rational>> red_;  // zeta^e, e in [degree, 2*degree-2]
};

/// An element of Q(zeta_N), immutable after construction.
///
/// A default-constructed value is a detached zero that adopts the field of
/// whatever it is first combined with; this keeps accumulation loops simple.
class CyclotomicNumber {
public:
  CyclotomicNumber() = default;

  static CyclotomicNumber zero(const CycloFieldPtr& f);
  static CyclotomicNumber one(const CycloFieldPtr& f);
  static CyclotomicNumber from_rational(const CycloFieldPtr& f, const Rational& c);
  /// c * zeta^m, reduced.
  static CyclotomicNumber make(const CycloFieldPtr& f, long m, const Rational& c);
  static CyclotomicNumber make(int order, long m, const Rational& c);
  /// The imaginary unit i = zeta^k.
  static CyclotomicNumber imaginary_unit(const CycloFieldPtr& f);
  /// cos(j*pi/k) = (zeta^(2j) + zeta^(-2j)) / 2.
  static CyclotomicNumber cos_angle(const CycloFieldPtr& f, long j);
  /// sin(j*pi/k) = (zeta^(2j) - zeta^(-2j)) / (2i).
  static CyclotomicNumber sin_angle(const CycloFieldPtr& f, long j);

  const CycloFieldPtr& field() const { return field_; }
  /// Power-basis coordinates (size degree()); empty for a detached zero.
  const std::vector<Rational>& coordinates() const { return coords_; }
  bool detached() const { return field_ == nullptr; }
  bool is_zero() const;
  /// True when the element lies in Q (all coordinates above zeta^0 vanish).
  bool is_rational() const;
  /// The zeta^0 coordinate; meaningful when is_rational().
  Rational rational_part() const;

  CyclotomicNumber operator-() const;
  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) {
    a += b;
    return a;
  }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) {
    a -= b;
    return a;
  }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
  CyclotomicNumber operator*(const Rational& c) const;

  /// Multiplicative inverse. Throws DivisionByZeroError on zero.
  CyclotomicNumber inverse() const;
  /// The automorphism zeta -> zeta^(-1) (complex conjugation).
  CyclotomicNumber conjugate() const;

  bool operator==(const CyclotomicNumber& o) const;
  bool operator!=(const CyclotomicNumber& o) const { return !(*this == o); }

  /// Numeric embedding zeta -> exp(i*pi/(2k)).
  std::complex<double> to_complex() const;

  /// Renders as a polynomial in zeta, e.g. "1/2*zeta^2 - 3*zeta^0".
  std::string to_string() const;
  /// Parses the to_string grammar.
  static CyclotomicNumber parse(const CycloFieldPtr& f, const std::string& text);

private:
  CyclotomicNumber(CycloFieldPtr f, std::vector<Rational> coords);
  void require_same_field(const CyclotomicNumber& o) const;

  CycloFieldPtr field_;
  std::vector<Rational> coords_;  // size degree(), power basis
};

/// Signals inversion of zero, kept distinct from generic domain errors.
class DivisionByZeroError : public std::domain_error {
public:
  DivisionByZeroError() : std::domain_error("division by zero in cyclotomic field") {}
};

}  // namespace ttw
