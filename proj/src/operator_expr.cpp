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

#include "ttw/operator_expr.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace ttw {

void Budget::check(std::size_t current_terms) const {
  if (max_terms && current_terms > max_terms)
    throw BudgetExceededError("term budget exceeded: " + std::to_string(current_terms) + " > " +
                              std::to_string(max_terms));
  if (max_seconds > 0.0) {
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > max_seconds)
      throw BudgetExceededError("time budget exceeded after " + std::to_string(elapsed) + " s");
  }
}

void OperatorExpr::attach(const CycloFieldPtr& f) { field_ = f; }

int OperatorExpr::k() const {
  if (detached()) throw std::logic_error("detached operator has no k");
  return field_->k();
}

void OperatorExpr::require_same_field(const OperatorExpr& o) const {
  if (field_ != o.field_)
    throw std::invalid_argument("operator operands have mixed k");
}

void OperatorExpr::add_term(const TermKey& key, const Coefficient& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

OperatorExpr OperatorExpr::zero(const CycloFieldPtr& f) {
  OperatorExpr e;
  e.attach(f);
  return e;
}

OperatorExpr OperatorExpr::identity(const CycloFieldPtr& f) {
  return from_coefficient(Coefficient::one(f));
}

OperatorExpr OperatorExpr::deriv_r(const CycloFieldPtr& f, int p) {
  return term(Coefficient::one(f), p, 0, GroupElement::identity());
}

OperatorExpr OperatorExpr::deriv_phi(const CycloFieldPtr& f, int q) {
  return term(Coefficient::one(f), 0, q, GroupElement::identity());
}

OperatorExpr OperatorExpr::group(const CycloFieldPtr& f, GroupElement g) {
  return term(Coefficient::one(f), 0, 0, g);
}

OperatorExpr OperatorExpr::from_coefficient(const Coefficient& c) {
  return term(c, 0, 0, GroupElement::identity());
}

OperatorExpr OperatorExpr::term(const Coefficient& c, int p, int q, GroupElement g) {
  if (c.detached()) throw std::invalid_argument("operator term needs an attached coefficient");
  if (p < 0 || q < 0) throw std::invalid_argument("derivative powers must be nonnegative");
  OperatorExpr e;
  e.attach(c.field());
  e.add_term(TermKey{p, q, g}, c);
  return e;
}

OperatorExpr OperatorExpr::operator-() const {
  OperatorExpr out = *this;
  for (auto& [key, c] : out.terms_) c = -c;
  return out;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  if (o.detached()) return *this;
  if (detached()) {
    *this = o;
    return *this;
  }
  require_same_field(o);
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
  if (o.detached()) return *this;
  if (detached()) {
    *this = -o;
    return *this;
  }
  require_same_field(o);
  for (const auto& [key, c] : o.terms_) add_term(key, -c);
  return *this;
}

namespace {

// Small Pascal triangle; derivative orders stay tiny.
long binom(int n, int j) {
  static std::vector<std::vector<long>> rows = {{1}};
  while (static_cast<int>(rows.size()) <= n) {
    const auto& prev = rows.back();
    std::vector<long> row(prev.size() + 1, 1);
    for (std::size_t i = 1; i < prev.size(); ++i) row[i] = prev[i - 1] + prev[i];
    rows.push_back(std::move(row));
  }
  return rows[n][j];
}

}  // namespace

namespace {

using TermAccum = std::map<TermKey, CoefficientSum>;

// Accumulates sign * lhs * rhs into acc without normalizing intermediate
// sums; left-hand terms sharing a group element see the same substituted
// right coefficient and derivative grid, so they are batched.
void multiply_into(TermAccum& acc, const OperatorExpr& lhs, const OperatorExpr& rhs, bool negate_all,
                   const Budget* budget) {
  const int two_k = 2 * lhs.field()->k();

  struct Batch {
    int maxp = 0, maxq = 0;
    std::vector<const std::pair<const TermKey, Coefficient>*> terms;
  };
  std::map<GroupElement, Batch> batches;
  for (const auto& t : lhs.terms()) {
    Batch& b = batches[t.first.g];
    b.maxp = std::max(b.maxp, t.first.p);
    b.maxq = std::max(b.maxq, t.first.q);
    b.terms.push_back(&t);
  }

  std::size_t tick = 0;
  for (const auto& [k2, c2] : rhs.terms()) {
    for (const auto& [g1, batch] : batches) {
      if (budget && (++tick % 16 == 0)) budget->check(acc.size());
      // Move g1 through c2, and through d_phi^q2 (a reflection flips its sign).
      Coefficient moved = c2.substitute_group(g1.rot, g1.refl);
      bool negate = negate_all ^ (g1.refl && (k2.q % 2 == 1));
      GroupElement g3 = g1.compose(k2.g, two_k);
      // Staircase of mixed derivatives of the moved coefficient: row j1 only
      // reaches the highest d_phi order some term with p >= j1 needs.
      std::vector<int> width(static_cast<std::size_t>(batch.maxp) + 1, -1);
      for (const auto* t : batch.terms)
        for (int j1 = 0; j1 <= t->first.p; ++j1)
          width[j1] = std::max(width[j1], t->first.q);
      std::vector<std::vector<Coefficient>> derivs(width.size());
      for (std::size_t j1 = 0; j1 < width.size(); ++j1)
        derivs[j1].resize(static_cast<std::size_t>(width[j1]) + 1);
      derivs[0][0] = std::move(moved);
      for (int j2 = 1; j2 <= width[0]; ++j2) derivs[0][j2] = derivs[0][j2 - 1].d_phi();
      for (int j1 = 1; j1 <= batch.maxp; ++j1)
        for (int j2 = 0; j2 <= width[j1]; ++j2) derivs[j1][j2] = derivs[j1 - 1][j2].d_r();
      for (const auto* t : batch.terms) {
        const TermKey& k1 = t->first;
        const Coefficient& c1 = t->second;
        for (int j1 = 0; j1 <= k1.p; ++j1) {
          for (int j2 = 0; j2 <= k1.q; ++j2) {
            const Coefficient& d = derivs[j1][j2];
            if (d.is_zero()) continue;
            long factor = binom(k1.p, j1) * binom(k1.q, j2);
            acc[TermKey{k1.p - j1 + k2.p, k1.q - j2 + k2.q, g3}].add_product(c1, d, factor, negate);
          }
        }
      }
    }
  }
}

}  // namespace

OperatorExpr OperatorExpr::multiply(const OperatorExpr& o, const Budget* budget) const {
  if (detached() || o.detached()) return OperatorExpr();
  require_same_field(o);
  TermAccum acc;
  multiply_into(acc, *this, o, false, budget);
  OperatorExpr out = zero(field_);
  for (const auto& [key, sum] : acc) {
    Coefficient c = sum.finalize();
    if (!c.is_zero()) out.terms_.emplace(key, std::move(c));
    if (budget) budget->check(out.terms_.size());
  }
  return out;
}

OperatorExpr OperatorExpr::scale(const Coefficient& c) const {
  if (detached()) return *this;
  OperatorExpr out = zero(field_);
  for (const auto& [key, v] : terms_) out.add_term(key, v * c);
  return out;
}

OperatorExpr OperatorExpr::scale(const CyclotomicNumber& c) const {
  return scale(Coefficient::scalar(c));
}

OperatorExpr OperatorExpr::scale(const Rational& c) const {
  if (detached()) return *this;
  return scale(Coefficient::scalar(field_, c));
}

OperatorExpr OperatorExpr::pow(unsigned n, const Budget* budget) const {
  if (detached()) return *this;
  OperatorExpr acc = identity(field_);
  for (unsigned i = 0; i < n; ++i) acc = acc.multiply(*this, budget);
  return acc;
}

OperatorExpr OperatorExpr::adjoint() const {
  if (detached()) return *this;
  const int two_k = 2 * field_->k();
  // (c d_r^p d_phi^q g)^+ = g^+ (-d_phi)^q (-d_r - 1/r)^p conj(c);
  // powers of the radial adjoint are cached per call.
  OperatorExpr minus_dphi = deriv_phi(field_).scale(Rational(-1));
  OperatorExpr radial =
      deriv_r(field_).scale(Rational(-1)) - from_coefficient(Coefficient::var_r(field_, -1));
  std::map<int, OperatorExpr> radial_pow{{0, identity(field_)}};
  std::map<int, OperatorExpr> angular_pow{{0, identity(field_)}};
  auto power_of = [](std::map<int, OperatorExpr>& cache, const OperatorExpr& base, int n) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    int have = cache.rbegin()->first;
    OperatorExpr cur = cache.rbegin()->second;
    while (have < n) {
      cur = cur * base;
      cache.emplace(++have, cur);
    }
    return cur;
  };
  OperatorExpr out = zero(field_);
  for (const auto& [key, c] : terms_) {
    OperatorExpr piece = group(field_, key.g.adjoint(two_k));
    piece = piece * power_of(angular_pow, minus_dphi, key.q);
    piece = piece * power_of(radial_pow, radial, key.p);
    piece = piece * from_coefficient(c.substitute(SubstAction::conjugate));
    out += piece;
  }
  return out;
}

OperatorExpr OperatorExpr::conjugate_by_group(GroupElement g) const {
  if (detached()) return *this;
  const int two_k = 2 * field_->k();
  OperatorExpr left = group(field_, g);
  OperatorExpr right = group(field_, g.inverse(two_k));
  return left * (*this) * right;
}

OperatorExpr OperatorExpr::project_identity() const {
  if (detached()) return *this;
  OperatorExpr out = zero(field_);
  for (const auto& [key, c] : terms_) out.add_term(TermKey{key.p, key.q, GroupElement::identity()}, c);
  return out;
}

Coefficient OperatorExpr::coefficient_of(int p, int q) const {
  if (detached()) return Coefficient();
  auto it = terms_.find(TermKey{p, q, GroupElement::identity()});
  if (it == terms_.end()) return Coefficient::zero(field_);
  return it->second;
}

int OperatorExpr::max_order() const {
  int best = -1;
  for (const auto& [key, c] : terms_) best = std::max(best, key.p + key.q);
  return best;
}

OperatorExpr OperatorExpr::set_ab_zero() const {
  if (detached()) return *this;
  OperatorExpr out = zero(field_);
  for (const auto& [key, c] : terms_) out.add_term(key, c.set_ab_zero());
  return out;
}

OperatorExpr OperatorExpr::substitute_numeric(const std::optional<Rational>& a,
                                              const std::optional<Rational>& b,
                                              const std::optional<Rational>& w) const {
  if (detached()) return *this;
  OperatorExpr out = zero(field_);
  for (const auto& [key, c] : terms_) out.add_term(key, c.substitute_numeric(a, b, w));
  return out;
}

bool OperatorExpr::equals(const OperatorExpr& o) const {
  if (detached()) return o.is_zero();
  if (o.detached()) return is_zero();
  OperatorExpr d = *this;
  d -= o;
  return d.is_zero();
}

std::string OperatorExpr::to_string() const {
  if (detached() || terms_.empty()) return "0\n";
  std::ostringstream os;
  for (const auto& [key, c] : terms_) {
    os << "(" << c.to_string() << ") * Dr^" << key.p << " * Dphi^" << key.q << " * R^"
       << key.g.rot << " * I^" << key.g.refl << "\n";
  }
  return os.str();
}

namespace {

OperatorExpr bilinear_product(const OperatorExpr& a, const OperatorExpr& b, bool negate_second,
                              const Budget* budget) {
  if (a.detached() || b.detached()) return OperatorExpr();
  TermAccum acc;
  multiply_into(acc, a, b, false, budget);
  multiply_into(acc, b, a, negate_second, budget);
  OperatorExpr out = OperatorExpr::zero(a.field());
  for (const auto& [key, sum] : acc) {
    Coefficient c = sum.finalize();
    if (!c.is_zero()) out += OperatorExpr::term(c, key.p, key.q, key.g);
    if (budget) budget->check(out.term_count());
  }
  return out;
}

}  // namespace

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b, const Budget* budget) {
  return bilinear_product(a, b, true, budget);
}

OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b, const Budget* budget) {
  return bilinear_product(a, b, false, budget);
}

}  // namespace ttw
