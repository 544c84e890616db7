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

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttw/cyclotomic.hpp"

namespace ttw {

/// Exponent vector of one numerator monomial.
///
/// Variables: r (radius), u = exp(i*phi), a, b (coupling strengths) and
/// s = sqrt(2*w) where w is the oscillator frequency.  r, u and s carry
/// Laurent exponents; a and b are polynomial.  The frequency never appears
/// directly: w = s^2/2, so sqrt(2*w) prefactors stay inside the ring.
struct Monomial {
  int er = 0;
  int eu = 0;
  int ea = 0;
  int eb = 0;
  int es = 0;

  auto operator<=>(const Monomial&) const = default;
  Monomial operator+(const Monomial& o) const {
    return {er + o.er, eu + o.eu, ea + o.ea, eb + o.eb, es + o.es};
  }
};

enum class TrigKind { sin, cos, tan, cot, sec2, csc2 };
enum class SubstAction { shift_R, reflect_I, conjugate };

/// Evaluation point for the numeric embedding.  margin is the minimum
/// angular distance of phi from the pole grid (multiples of pi/(2k)); points
/// closer than that are rejected rather than evaluated.
struct EvalPoint {
  double r = 1.0;
  double phi = 0.3;
  double a = 0.0;
  double b = 0.0;
  double w = 1.0;
  double margin = 0.05;
};

/// Signals evaluation requested too close to a pole of the coefficient ring.
class PoleProximityError : public std::runtime_error {
public:
  explicit PoleProximityError(const std::string& what) : std::runtime_error(what) {}
};

/// Signals malformed textual input.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A rational trigonometric function of (r, phi) with polynomial dependence
/// on a, b and sqrt(2w), encoded through u = exp(i*phi).
///
/// Shape: Laurent numerator over Q(zeta_4k) divided by a multiset of pole
/// factors from the fixed family
///     F_k = { zeta^(4j) u^2 + 1,  zeta^(4j) u^2 - 1 : j = 0..k-1 },
/// which is exactly where tan(phi + j*pi/k) and cot(phi + j*pi/k) blow up.
/// F_k is closed under the dihedral substitutions, so normalization never
/// needs a general multivariate gcd: any factor that exactly divides the
/// numerator is removed by trial division, pure powers of r and u are
/// absorbed into the Laurent numerator, and zero has an empty numerator.
class Coefficient {
public:
  using NumeratorMap = std::map<Monomial, CyclotomicNumber>;

  Coefficient() = default;  // detached zero

  static Coefficient zero(const CycloFieldPtr& f);
  static Coefficient one(const CycloFieldPtr& f);
  static Coefficient scalar(const CycloFieldPtr& f, const Rational& c);
  static Coefficient scalar(const CyclotomicNumber& c);
  static Coefficient monomial(const CyclotomicNumber& c, const Monomial& m);
  /// num / prod(F_k factor ^ multiplicity), normalized on construction.
  static Coefficient fraction(const CycloFieldPtr& f, NumeratorMap num,
                              std::vector<std::uint32_t> den);
  static Coefficient var_r(const CycloFieldPtr& f, int e = 1);
  static Coefficient var_u(const CycloFieldPtr& f, int e = 1);
  static Coefficient var_a(const CycloFieldPtr& f, int e = 1);
  static Coefficient var_b(const CycloFieldPtr& f, int e = 1);
  static Coefficient var_s(const CycloFieldPtr& f, int e = 1);
  /// w^e = (s^2/2)^e, e may be negative.
  static Coefficient omega(const CycloFieldPtr& f, int e = 1);

  /// The u-encoded trig function of (phi + shift*pi/k).  sin and cos are
  /// Laurent; tan, cot, sec2, csc2 carry a single F_k pole factor.
  static Coefficient trig_fn(const CycloFieldPtr& f, TrigKind kind, long shift);

  /// sec^2(k*phi) = 4 u^(2k) / (u^(2k)+1)^2 and csc^2(k*phi); the folded
  /// potential profiles, with (u^(2k) -+ 1) expanded over the F_k factors.
  static Coefficient sec2_k_phi(const CycloFieldPtr& f);
  static Coefficient csc2_k_phi(const CycloFieldPtr& f);

  const CycloFieldPtr& field() const { return field_; }
  bool detached() const { return field_ == nullptr; }
  bool is_zero() const { return num_.empty(); }
  std::size_t term_count() const { return num_.size(); }
  bool denominator_trivial() const;

  Coefficient operator-() const;
  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  friend Coefficient operator+(Coefficient x, const Coefficient& y) { x += y; return x; }
  friend Coefficient operator-(Coefficient x, const Coefficient& y) { x -= y; return x; }
  friend Coefficient operator*(const Coefficient& x, const Coefficient& y);
  Coefficient operator*(const CyclotomicNumber& c) const;
  Coefficient operator*(const Rational& c) const;

  /// Mathematical equality, decided exactly by cross-multiplication.
  bool equals(const Coefficient& o) const;
  bool operator==(const Coefficient& o) const { return equals(o); }

  /// d/dphi through the chain rule u = exp(i*phi), i.e. i*u*d/du.
  Coefficient d_phi() const;
  /// d/dr.
  Coefficient d_r() const;

  /// The dihedral substitutions: shift_R maps u -> zeta^2*u, reflect_I maps
  /// u -> 1/u, conjugate maps u -> 1/u and zeta -> 1/zeta; r, a, b, s fixed.
  Coefficient substitute(SubstAction action) const;
  /// The function substitution induced by R^rot I^refl (reflect first, then
  /// rotate rot times).
  Coefficient substitute_group(int rot, int refl) const;

  /// Drops every monomial containing a or b (the a = b = 0 reduction).
  Coefficient set_ab_zero() const;
  /// Substitutes exact numbers for a and b, and optionally for w (even
  /// powers of s become powers of 2w; an odd leftover s stays symbolic).
  Coefficient substitute_numeric(const std::optional<Rational>& a,
                                 const std::optional<Rational>& b,
                                 const std::optional<Rational>& w) const;

  /// Numeric embedding zeta -> exp(i*pi/(2k)), u -> exp(i*phi).
  /// Throws PoleProximityError when the point is inside the margin of a pole.
  std::complex<double> eval(const EvalPoint& p) const;

  /// Renders as `num` or `(num) / (factor^e * ...)`; round-trips via parse.
  std::string to_string() const;
  static Coefficient parse(const CycloFieldPtr& f, const std::string& text);

  const std::map<Monomial, CyclotomicNumber>& numerator() const { return num_; }
  const std::vector<std::uint32_t>& denominator() const { return den_; }

private:
  friend class CoefficientOps;

  CycloFieldPtr field_;
  std::map<Monomial, CyclotomicNumber> num_;
  std::vector<std::uint32_t> den_;  // size 2k: [plus_0..plus_{k-1}, minus_0..minus_{k-1}]

  void normalize();
  void require_same_field(const Coefficient& o) const;
  void attach(const CycloFieldPtr& f);
  int k() const;
};

/// Accumulator for long chains of coefficient additions.  Numerators merge
/// per denominator profile as they arrive; the cross-multiplied combination
/// onto the common denominator and the normalization happen once, in
/// finalize().  The result is identical to folding with operator+=.
class CoefficientSum {
public:
  void add(const Coefficient& c, bool negate = false);
  /// Accumulates scale * x * y without normalizing the intermediate product.
  void add_product(const Coefficient& x, const Coefficient& y, long scale, bool negate);
  bool empty() const { return buckets_.empty(); }
  /// Collapses the buckets into one normalized Coefficient.
  Coefficient finalize() const;

private:
  CycloFieldPtr field_;
  std::map<std::vector<std::uint32_t>, Coefficient::NumeratorMap> buckets_;
};

}  // namespace ttw
