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

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ttw/coefficient.hpp"

namespace ttw {

/// An element R^rot I^refl of the dihedral group D_2k acting on the angular
/// variable: R rotates phi by pi/k, I reflects phi -> -phi.  The composition
/// law realizes I R = R^(2k-1) I.
struct GroupElement {
  int rot = 0;   // mod 2k
  int refl = 0;  // 0 or 1

  static GroupElement identity() { return {}; }
  static GroupElement rotation(int i, int two_k) { return {((i % two_k) + two_k) % two_k, 0}; }
  static GroupElement reflection() { return {0, 1}; }

  bool is_identity() const { return rot == 0 && refl == 0; }

  /// (i1,e1) . (i2,e2) = (i1 + (-1)^e1 i2 mod 2k, e1 xor e2).
  GroupElement compose(const GroupElement& o, int two_k) const {
    int r = rot + (refl ? -o.rot : o.rot);
    return {((r % two_k) + two_k) % two_k, refl ^ o.refl};
  }
  GroupElement inverse(int two_k) const {
    if (refl) return *this;  // reflections are involutions
    return {(two_k - rot) % two_k, 0};
  }
  /// (R^i I^e)^dagger = I^e R^(-i).
  GroupElement adjoint(int two_k) const {
    int r = refl ? rot : (two_k - rot) % two_k;
    return {r, refl};
  }

  auto operator<=>(const GroupElement&) const = default;
};

/// Key of a normal-ordered term coefficient * d_r^p * d_phi^q * g.
struct TermKey {
  int p = 0;
  int q = 0;
  GroupElement g;
  auto operator<=>(const TermKey&) const = default;
};

/// Resource cap for the combinatorially heavy constructions.  check() throws
/// BudgetExceededError; it never silently truncates a result.
struct Budget {
  std::size_t max_terms = 0;   // 0 = unlimited
  double max_seconds = 0.0;    // 0 = unlimited
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void check(std::size_t current_terms) const;
};

class BudgetExceededError : public std::runtime_error {
public:
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

/// A differential-difference operator in canonical normal order: a finite sum
/// of terms  coefficient * d_r^p * d_phi^q * (R^i I^e),  keyed by (p, q, g)
/// with nonzero merged coefficients.  Equality of canonical forms is term-set
/// equality.  Values are immutable; all operations are pure.
class OperatorExpr {
public:
  OperatorExpr() = default;  // detached zero

  static OperatorExpr zero(const CycloFieldPtr& f);
  static OperatorExpr identity(const CycloFieldPtr& f);
  static OperatorExpr deriv_r(const CycloFieldPtr& f, int p = 1);
  static OperatorExpr deriv_phi(const CycloFieldPtr& f, int q = 1);
  static OperatorExpr group(const CycloFieldPtr& f, GroupElement g);
  static OperatorExpr from_coefficient(const Coefficient& c);
  static OperatorExpr term(const Coefficient& c, int p, int q, GroupElement g);

  const CycloFieldPtr& field() const { return field_; }
  bool detached() const { return field_ == nullptr; }
  int k() const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<TermKey, Coefficient>& terms() const { return terms_; }

  OperatorExpr operator-() const;
  OperatorExpr& operator+=(const OperatorExpr& o);
  OperatorExpr& operator-=(const OperatorExpr& o);
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { a += b; return a; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { a -= b; return a; }

  /// Normal-ordering product.  Rewrites right-to-left past coefficients:
  /// d_r f = f d_r + f',  d_phi f = f d_phi + df/dphi,  g f = (g.f) g,
  /// I d_phi = -d_phi I; R, I commute with d_r and R with d_phi.
  OperatorExpr multiply(const OperatorExpr& o, const Budget* budget = nullptr) const;
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    return a.multiply(b);
  }

  OperatorExpr scale(const Coefficient& c) const;
  OperatorExpr scale(const CyclotomicNumber& c) const;
  OperatorExpr scale(const Rational& c) const;
  OperatorExpr pow(unsigned n, const Budget* budget = nullptr) const;

  /// Adjoint with respect to the measure r dr dphi:
  /// d_r^+ = -d_r - 1/r, d_phi^+ = -d_phi, R^+ = R^(2k-1), I^+ = I,
  /// coefficients conjugate; antihomomorphism over products.
  OperatorExpr adjoint() const;

  /// g X g^(-1).
  OperatorExpr conjugate_by_group(GroupElement g) const;

  /// Projection onto the identity representation: every group element is
  /// replaced by 1 and coefficients with equal (p, q) merge.
  OperatorExpr project_identity() const;

  /// Coefficient of d_r^p d_phi^q on the identity group element (the relevant
  /// lookup for projected, group-free operators).
  Coefficient coefficient_of(int p, int q) const;

  /// Highest total derivative order max(p+q); -1 for the zero operator.
  int max_order() const;

  OperatorExpr set_ab_zero() const;
  OperatorExpr substitute_numeric(const std::optional<Rational>& a,
                                  const std::optional<Rational>& b,
                                  const std::optional<Rational>& w) const;

  bool equals(const OperatorExpr& o) const;
  bool operator==(const OperatorExpr& o) const { return equals(o); }

  /// One term per line: `<coeff> * Dr^p * Dphi^q * R^i * I^e`, ordered by
  /// (p, q, rot, refl).
  std::string to_string() const;

private:
  void attach(const CycloFieldPtr& f);
  void add_term(const TermKey& key, const Coefficient& c);
  void require_same_field(const OperatorExpr& o) const;

  CycloFieldPtr field_;
  std::map<TermKey, Coefficient> terms_;
};

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b,
                        const Budget* budget = nullptr);
OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b,
                            const Budget* budget = nullptr);

}  // namespace ttw
