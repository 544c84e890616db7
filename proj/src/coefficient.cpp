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

#include "ttw/coefficient.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ttw {

namespace {

using NumMap = std::map<Monomial, CyclotomicNumber>;

void add_term(NumMap& m, const Monomial& key, const CyclotomicNumber& c) {
  if (c.is_zero()) return;
  auto it = m.find(key);
  if (it == m.end()) {
    m.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m.erase(it);
}

void add_map(NumMap& dst, const NumMap& src) {
  for (const auto& [key, c] : src) add_term(dst, key, c);
}

void sub_map(NumMap& dst, const NumMap& src) {
  for (const auto& [key, c] : src) add_term(dst, key, -c);
}

NumMap map_mul(const NumMap& a, const NumMap& b) {
  NumMap out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) add_term(out, ka + kb, ca * cb);
  return out;
}

NumMap map_scale(const NumMap& a, const Monomial& key, const CyclotomicNumber& c) {
  NumMap out;
  for (const auto& [ka, ca] : a) {
    CyclotomicNumber v = ca * c;
    if (!v.is_zero()) out.emplace(ka + key, std::move(v));
  }
  return out;
}

// Sub-key of a monomial with the u-exponent stripped, used by the
// u-directed long division.
struct RestKey {
  int er, ea, eb, es;
  auto operator<=>(const RestKey&) const = default;
};

}  // namespace

// --- internal helpers exposed to this translation unit ----------------------

class CoefficientOps {
public:
  // The F_k factor with the given index: j = idx mod k selects the rotation,
  // idx < k selects zeta^(4j) u^2 + 1, otherwise zeta^(4j) u^2 - 1.
  static NumMap factor_poly(const CycloFieldPtr& f, int idx) {
    int k = f->k();
    int j = idx % k;
    int sigma = idx < k ? 1 : -1;
    NumMap m;
    m.emplace(Monomial{0, 2, 0, 0, 0}, CyclotomicNumber::make(f, 4 * j, Rational(1)));
    m.emplace(Monomial{}, CyclotomicNumber::from_rational(f, Rational(sigma)));
    return m;
  }

  // prod_idx factor_idx^mult[idx]; a pure u-polynomial with few terms.
  static NumMap factor_product(const CycloFieldPtr& f, const std::vector<std::uint32_t>& mult) {
    NumMap acc{{Monomial{}, CyclotomicNumber::one(f)}};
    for (std::size_t idx = 0; idx < mult.size(); ++idx)
      for (std::uint32_t m = 0; m < mult[idx]; ++m)
        acc = map_mul(acc, factor_poly(f, static_cast<int>(idx)));
    return acc;
  }

  // Attempts exact division of num by the F_k factor idx; on success stores
  // the quotient and returns true.
  static bool try_divide(const NumMap& num, const CycloFieldPtr& f, int idx, NumMap& quotient) {
    if (num.empty()) {
      quotient.clear();
      return true;
    }
    int k = f->k();
    int j = idx % k;
    int sigma = idx < k ? 1 : -1;

    int min_eu = num.begin()->first.eu, max_eu = min_eu;
    for (const auto& [m, c] : num) {
      min_eu = std::min(min_eu, m.eu);
      max_eu = std::max(max_eu, m.eu);
    }
    if (max_eu - min_eu < 2) return false;

    std::map<int, std::map<RestKey, CyclotomicNumber>> p;
    for (const auto& [m, c] : num) p[m.eu][RestKey{m.er, m.ea, m.eb, m.es}] = c;

    CyclotomicNumber lead_inv = CyclotomicNumber::make(f, -4 * j, Rational(1));
    CyclotomicNumber sig = CyclotomicNumber::from_rational(f, Rational(sigma));
    std::map<int, std::map<RestKey, CyclotomicNumber>> q;

    while (!p.empty()) {
      auto top = std::prev(p.end());
      int e = top->first;
      if (e < min_eu + 2) return false;
      auto& lower = p[e - 2];
      for (auto& [rest, c] : top->second) {
        CyclotomicNumber qc = c * lead_inv;
        auto qit = q[e - 2].find(rest);
        if (qit == q[e - 2].end()) q[e - 2].emplace(rest, qc);
        else qit->second += qc;
        auto it = lower.find(rest);
        CyclotomicNumber delta = qc * sig;
        if (it == lower.end()) {
          lower.emplace(rest, -delta);
        } else {
          it->second -= delta;
          if (it->second.is_zero()) lower.erase(it);
        }
      }
      if (lower.empty()) p.erase(e - 2);
      p.erase(e);
    }

    quotient.clear();
    for (const auto& [e, bucket] : q)
      for (const auto& [rest, c] : bucket)
        if (!c.is_zero()) quotient.emplace(Monomial{rest.er, e, rest.ea, rest.eb, rest.es}, c);
    return true;
  }
};

// --- construction ------------------------------------------------------------

void Coefficient::attach(const CycloFieldPtr& f) {
  field_ = f;
  den_.assign(2 * f->k(), 0);
}

int Coefficient::k() const { return field_->k(); }

Coefficient Coefficient::zero(const CycloFieldPtr& f) {
  Coefficient c;
  c.attach(f);
  return c;
}

Coefficient Coefficient::one(const CycloFieldPtr& f) {
  return scalar(f, Rational(1));
}

Coefficient Coefficient::scalar(const CycloFieldPtr& f, const Rational& q) {
  return monomial(CyclotomicNumber::from_rational(f, q), Monomial{});
}

Coefficient Coefficient::scalar(const CyclotomicNumber& c) {
  if (c.detached()) return Coefficient();
  return monomial(c, Monomial{});
}

Coefficient Coefficient::monomial(const CyclotomicNumber& c, const Monomial& m) {
  if (c.detached()) throw std::invalid_argument("monomial needs an attached scalar");
  Coefficient out;
  out.attach(c.field());
  if (!c.is_zero()) out.num_.emplace(m, c);
  return out;
}

Coefficient Coefficient::fraction(const CycloFieldPtr& f, NumeratorMap num,
                                  std::vector<std::uint32_t> den) {
  if (den.size() != static_cast<std::size_t>(2 * f->k()))
    throw std::invalid_argument("denominator profile has the wrong length");
  Coefficient out;
  out.field_ = f;
  for (auto it = num.begin(); it != num.end();)
    it = it->second.is_zero() ? num.erase(it) : std::next(it);
  out.num_ = std::move(num);
  out.den_ = std::move(den);
  out.normalize();
  return out;
}

Coefficient Coefficient::var_r(const CycloFieldPtr& f, int e) {
  return monomial(CyclotomicNumber::one(f), Monomial{e, 0, 0, 0, 0});
}
Coefficient Coefficient::var_u(const CycloFieldPtr& f, int e) {
  return monomial(CyclotomicNumber::one(f), Monomial{0, e, 0, 0, 0});
}
Coefficient Coefficient::var_a(const CycloFieldPtr& f, int e) {
  return monomial(CyclotomicNumber::one(f), Monomial{0, 0, e, 0, 0});
}
Coefficient Coefficient::var_b(const CycloFieldPtr& f, int e) {
  return monomial(CyclotomicNumber::one(f), Monomial{0, 0, 0, e, 0});
}
Coefficient Coefficient::var_s(const CycloFieldPtr& f, int e) {
  return monomial(CyclotomicNumber::one(f), Monomial{0, 0, 0, 0, e});
}

Coefficient Coefficient::omega(const CycloFieldPtr& f, int e) {
  Rational scale = e >= 0 ? Rational(1, mpz_class(1) << e) : Rational(mpz_class(1) << (-e));
  return monomial(CyclotomicNumber::from_rational(f, scale), Monomial{0, 0, 0, 0, 2 * e});
}

Coefficient Coefficient::trig_fn(const CycloFieldPtr& f, TrigKind kind, long shift) {
  long k = f->k();
  long j = ((shift % k) + k) % k;
  // The shift enters through zeta^(2*shift); the residue mod k suffices for
  // tan/cot/sec2/csc2 (period pi) while sin/cos use the full shift.
  CyclotomicNumber i_c = CyclotomicNumber::imaginary_unit(f);
  switch (kind) {
    case TrigKind::sin: {
      // (zeta^(2s) u - zeta^(-2s) u^-1) / (2i)
      CyclotomicNumber half_mi = (-i_c) * Rational(1, 2);
      Coefficient t = monomial(CyclotomicNumber::make(f, 2 * shift, Rational(1)) * half_mi,
                               Monomial{0, 1, 0, 0, 0});
      t += monomial(CyclotomicNumber::make(f, -2 * shift, Rational(-1)) * half_mi,
                    Monomial{0, -1, 0, 0, 0});
      return t;
    }
    case TrigKind::cos: {
      Coefficient t = monomial(CyclotomicNumber::make(f, 2 * shift, Rational(1, 2)),
                               Monomial{0, 1, 0, 0, 0});
      t += monomial(CyclotomicNumber::make(f, -2 * shift, Rational(1, 2)),
                    Monomial{0, -1, 0, 0, 0});
      return t;
    }
    case TrigKind::tan: {
      // -i (zeta^(4j) u^2 - 1) / (zeta^(4j) u^2 + 1)
      Coefficient t;
      t.attach(f);
      t.num_.emplace(Monomial{0, 2, 0, 0, 0}, CyclotomicNumber::make(f, 4 * j, Rational(1)) * (-i_c));
      t.num_.emplace(Monomial{}, i_c);
      t.den_[j] = 1;
      return t;
    }
    case TrigKind::cot: {
      // i (zeta^(4j) u^2 + 1) / (zeta^(4j) u^2 - 1)
      Coefficient t;
      t.attach(f);
      t.num_.emplace(Monomial{0, 2, 0, 0, 0}, CyclotomicNumber::make(f, 4 * j, Rational(1)) * i_c);
      t.num_.emplace(Monomial{}, i_c);
      t.den_[k + j] = 1;
      return t;
    }
    case TrigKind::sec2: {
      // 4 zeta^(4j) u^2 / (zeta^(4j) u^2 + 1)^2
      Coefficient t;
      t.attach(f);
      t.num_.emplace(Monomial{0, 2, 0, 0, 0}, CyclotomicNumber::make(f, 4 * j, Rational(4)));
      t.den_[j] = 2;
      return t;
    }
    case TrigKind::csc2: {
      // -4 zeta^(4j) u^2 / (zeta^(4j) u^2 - 1)^2
      Coefficient t;
      t.attach(f);
      t.num_.emplace(Monomial{0, 2, 0, 0, 0}, CyclotomicNumber::make(f, 4 * j, Rational(-4)));
      t.den_[k + j] = 2;
      return t;
    }
  }
  throw std::logic_error("unreachable trig kind");
}

Coefficient Coefficient::sec2_k_phi(const CycloFieldPtr& f) {
  // u^(2k) + 1 = prod_j (zeta^(4j) u^2 + 1), so the squared cosine profile
  // lives over the plus factors with multiplicity 2.
  int kk = f->k();
  Coefficient t;
  t.attach(f);
  t.num_.emplace(Monomial{0, 2 * kk, 0, 0, 0}, CyclotomicNumber::from_rational(f, Rational(4)));
  for (int j = 0; j < kk; ++j) t.den_[j] = 2;
  return t;
}

Coefficient Coefficient::csc2_k_phi(const CycloFieldPtr& f) {
  int kk = f->k();
  Coefficient t;
  t.attach(f);
  t.num_.emplace(Monomial{0, 2 * kk, 0, 0, 0}, CyclotomicNumber::from_rational(f, Rational(-4)));
  for (int j = 0; j < kk; ++j) t.den_[kk + j] = 2;
  return t;
}

bool Coefficient::denominator_trivial() const {
  for (auto m : den_)
    if (m) return false;
  return true;
}

void Coefficient::require_same_field(const Coefficient& o) const {
  if (field_ != o.field_)
    throw std::invalid_argument("coefficient operands have mixed k");
}

void Coefficient::normalize() {
  if (num_.empty()) {
    std::fill(den_.begin(), den_.end(), 0);
    return;
  }
  NumMap quotient;
  for (std::size_t idx = 0; idx < den_.size(); ++idx) {
    while (den_[idx] > 0) {
      if (!CoefficientOps::try_divide(num_, field_, static_cast<int>(idx), quotient)) break;
      num_ = std::move(quotient);
      quotient = NumMap();
      --den_[idx];
    }
  }
}

// --- arithmetic --------------------------------------------------------------

Coefficient Coefficient::operator-() const {
  Coefficient out = *this;
  for (auto& [m, c] : out.num_) c = -c;
  return out;
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  if (o.detached()) return *this;
  if (detached()) {
    *this = o;
    return *this;
  }
  require_same_field(o);
  if (den_ == o.den_) {
    add_map(num_, o.num_);
    if (!denominator_trivial()) normalize();
    else if (num_.empty()) normalize();
    return *this;
  }
  std::vector<std::uint32_t> lcm(den_.size()), up_l(den_.size()), up_r(den_.size());
  for (std::size_t i = 0; i < den_.size(); ++i) {
    lcm[i] = std::max(den_[i], o.den_[i]);
    up_l[i] = lcm[i] - den_[i];
    up_r[i] = lcm[i] - o.den_[i];
  }
  NumMap lhs = map_mul(num_, CoefficientOps::factor_product(field_, up_l));
  NumMap rhs = map_mul(o.num_, CoefficientOps::factor_product(field_, up_r));
  add_map(lhs, rhs);
  num_ = std::move(lhs);
  den_ = std::move(lcm);
  normalize();
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
  *this += -o;
  return *this;
}

Coefficient operator*(const Coefficient& x, const Coefficient& y) {
  if (x.detached() || y.detached()) return Coefficient();
  x.require_same_field(y);
  Coefficient out;
  out.field_ = x.field_;
  // Scaling by a plain monomial cannot change F_k divisibility.
  if (y.denominator_trivial() && y.num_.size() == 1) {
    const auto& [key, c] = *y.num_.begin();
    out.num_ = map_scale(x.num_, key, c);
    out.den_ = x.den_;
    if (out.num_.empty()) std::fill(out.den_.begin(), out.den_.end(), 0);
    return out;
  }
  if (x.denominator_trivial() && x.num_.size() == 1) return y * x;
  out.num_ = map_mul(x.num_, y.num_);
  out.den_.resize(x.den_.size());
  for (std::size_t i = 0; i < x.den_.size(); ++i) out.den_[i] = x.den_[i] + y.den_[i];
  out.normalize();
  return out;
}

Coefficient Coefficient::operator*(const CyclotomicNumber& c) const {
  if (detached()) return *this;
  Coefficient out;
  out.field_ = field_;
  out.num_ = map_scale(num_, Monomial{}, c);
  out.den_ = den_;
  if (out.num_.empty()) std::fill(out.den_.begin(), out.den_.end(), 0);
  return out;
}

Coefficient Coefficient::operator*(const Rational& q) const {
  if (detached()) return *this;
  return *this * CyclotomicNumber::from_rational(field_, q);
}

bool Coefficient::equals(const Coefficient& o) const {
  if (detached()) return o.is_zero();
  if (o.detached()) return is_zero();
  Coefficient d = *this;
  d -= o;
  return d.is_zero();
}

// --- calculus ----------------------------------------------------------------

Coefficient Coefficient::d_phi() const {
  if (detached()) return *this;
  CyclotomicNumber iu = CyclotomicNumber::imaginary_unit(field_);
  NumMap dnum;
  for (const auto& [m, c] : num_) {
    if (m.eu == 0) continue;
    add_term(dnum, m, c * iu * Rational(m.eu));
  }
  if (denominator_trivial()) {
    Coefficient out;
    out.field_ = field_;
    out.den_ = den_;
    out.num_ = std::move(dnum);
    return out;
  }
  // Quotient rule: (n / prod f^m)' = [n' prod_P f - n sum_P m_f f' prod_{P\f} f]
  //                                  / prod f^(m+1 over P)
  std::vector<int> present;
  for (std::size_t i = 0; i < den_.size(); ++i)
    if (den_[i] > 0) present.push_back(static_cast<int>(i));
  NumMap prod_all{{Monomial{}, CyclotomicNumber::one(field_)}};
  for (int i : present) prod_all = map_mul(prod_all, CoefficientOps::factor_poly(field_, i));
  NumMap total = map_mul(dnum, prod_all);
  for (int i : present) {
    NumMap prod_rest{{Monomial{}, CyclotomicNumber::one(field_)}};
    for (int jj : present)
      if (jj != i) prod_rest = map_mul(prod_rest, CoefficientOps::factor_poly(field_, jj));
    // d_phi(zeta^(4j) u^2 + sigma) = 2 i zeta^(4j) u^2
    int j = i % field_->k();
    CyclotomicNumber dcoef = CyclotomicNumber::make(field_, 4 * j, Rational(2)) * iu *
                             Rational(static_cast<long>(den_[i]));
    NumMap piece = map_scale(map_mul(num_, prod_rest), Monomial{0, 2, 0, 0, 0}, dcoef);
    sub_map(total, piece);
  }
  Coefficient out;
  out.field_ = field_;
  out.num_ = std::move(total);
  out.den_ = den_;
  for (int i : present) out.den_[i] += 1;
  out.normalize();
  return out;
}

Coefficient Coefficient::d_r() const {
  if (detached()) return *this;
  Coefficient out;
  out.field_ = field_;
  out.den_ = den_;
  for (const auto& [m, c] : num_) {
    if (m.er == 0) continue;
    Monomial key = m;
    key.er -= 1;
    add_term(out.num_, key, c * Rational(m.er));
  }
  if (out.num_.empty()) std::fill(out.den_.begin(), out.den_.end(), 0);
  else if (!out.denominator_trivial()) out.normalize();
  return out;
}

// --- substitutions -----------------------------------------------------------

Coefficient Coefficient::substitute(SubstAction action) const {
  switch (action) {
    case SubstAction::shift_R:
      return substitute_group(1, 0);
    case SubstAction::reflect_I:
      return substitute_group(0, 1);
    case SubstAction::conjugate: {
      if (detached()) return *this;
      int kk = k();
      Coefficient out;
      out.field_ = field_;
      out.den_ = den_;  // conjugation fixes every factor index
      Monomial adj{};
      CyclotomicNumber unit = CyclotomicNumber::one(field_);
      for (std::size_t i = 0; i < den_.size(); ++i) {
        if (den_[i] == 0) continue;
        int j = static_cast<int>(i) % kk;
        long m = den_[i];
        adj.eu += 2 * static_cast<int>(m);
        unit = unit * CyclotomicNumber::make(field_, 4 * j * m, Rational(1));
        if (static_cast<int>(i) >= kk && m % 2 == 1) unit = -unit;
      }
      for (const auto& [mo, c] : num_) {
        Monomial key = mo;
        key.eu = -key.eu;
        add_term(out.num_, key + adj, c.conjugate() * unit);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable substitution");
}

Coefficient Coefficient::substitute_group(int rot, int refl) const {
  if (detached()) return *this;
  int kk = k();
  Coefficient cur;
  cur.field_ = field_;
  cur.den_.assign(2 * kk, 0);

  // Step 1: optional reflection u -> 1/u.
  NumMap work;
  std::vector<std::uint32_t> den(2 * kk, 0);
  if (refl % 2) {
    Monomial adj{};
    CyclotomicNumber unit = CyclotomicNumber::one(field_);
    for (std::size_t i = 0; i < den_.size(); ++i) {
      if (den_[i] == 0) continue;
      int j = static_cast<int>(i) % kk;
      int jr = (kk - j) % kk;
      long m = den_[i];
      std::size_t target = (static_cast<int>(i) < kk) ? jr : kk + jr;
      den[target] += den_[i];
      adj.eu += 2 * static_cast<int>(m);
      unit = unit * CyclotomicNumber::make(field_, -4 * j * m, Rational(1));
      if (static_cast<int>(i) >= kk && m % 2 == 1) unit = -unit;
    }
    for (const auto& [mo, c] : num_) {
      Monomial key = mo;
      key.eu = -key.eu;
      add_term(work, key + adj, c * unit);
    }
  } else {
    work = num_;
    den = den_;
  }

  // Step 2: rotation u -> zeta^(2 rot) u; factor indices rotate, no units.
  int r = ((rot % kk) + kk) % kk;  // the factor family has period k in the shift
  if (rot != 0) {
    NumMap shifted;
    for (const auto& [mo, c] : work)
      add_term(shifted, mo, c * CyclotomicNumber::make(field_, 2L * rot * mo.eu, Rational(1)));
    work = std::move(shifted);
    std::vector<std::uint32_t> dsh(2 * kk, 0);
    for (int i = 0; i < kk; ++i) {
      dsh[(i + r) % kk] += den[i];
      dsh[kk + (i + r) % kk] += den[kk + i];
    }
    den = std::move(dsh);
  }

  cur.num_ = std::move(work);
  cur.den_ = std::move(den);
  if (cur.num_.empty()) std::fill(cur.den_.begin(), cur.den_.end(), 0);
  return cur;
}

Coefficient Coefficient::set_ab_zero() const {
  if (detached()) return *this;
  Coefficient out;
  out.field_ = field_;
  out.den_ = den_;
  for (const auto& [m, c] : num_)
    if (m.ea == 0 && m.eb == 0) out.num_.emplace(m, c);
  if (out.num_.empty()) std::fill(out.den_.begin(), out.den_.end(), 0);
  else if (!out.denominator_trivial()) out.normalize();
  return out;
}

Coefficient Coefficient::substitute_numeric(const std::optional<Rational>& a,
                                            const std::optional<Rational>& b,
                                            const std::optional<Rational>& w) const {
  if (detached()) return *this;
  auto qpow = [](const Rational& base, int e) {
    Rational acc(1);
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
  };
  Coefficient out;
  out.field_ = field_;
  out.den_ = den_;
  for (const auto& [m, c] : num_) {
    Monomial key = m;
    CyclotomicNumber v = c;
    if (a) {
      if (key.ea) v = v * qpow(*a, key.ea);
      key.ea = 0;
    }
    if (b) {
      if (key.eb) v = v * qpow(*b, key.eb);
      key.eb = 0;
    }
    if (w && key.es != 0) {
      int rem = ((key.es % 2) + 2) % 2;
      int half = (key.es - rem) / 2;  // s^es = (2w)^half * s^rem
      Rational tw = Rational(2) * (*w);
      if (half >= 0) v = v * qpow(tw, half);
      else {
        if (tw == 0) throw std::invalid_argument("w = 0 with negative frequency power");
        v = v * qpow(Rational(1) / tw, -half);
      }
      key.es = rem;
    }
    add_term(out.num_, key, v);
  }
  if (out.num_.empty()) std::fill(out.den_.begin(), out.den_.end(), 0);
  else if (!out.denominator_trivial()) out.normalize();
  return out;
}

// --- numeric embedding -------------------------------------------------------

std::complex<double> Coefficient::eval(const EvalPoint& p) const {
  if (detached()) return {0.0, 0.0};
  int kk = k();
  const double pi = std::numbers::pi;

  // Pole margin: phi must keep its distance from the grid m*pi/(2k), where
  // every F_k factor vanishes.
  double cell = pi / (2.0 * kk);
  double frac = p.phi / cell - std::round(p.phi / cell);
  double dist = std::abs(frac) * cell;
  bool needs_pole_guard = !denominator_trivial();
  bool needs_r_guard = false;
  bool needs_s = false;
  for (const auto& [m, c] : num_) {
    if (m.er < 0) needs_r_guard = true;
    if (m.es != 0) needs_s = true;
  }
  if (needs_pole_guard && dist < p.margin)
    throw PoleProximityError("evaluation point within margin of a pole angle");
  if (needs_r_guard && std::abs(p.r) < p.margin)
    throw PoleProximityError("evaluation radius within margin of r = 0");
  if (needs_s && p.w <= 0.0)
    throw std::invalid_argument("evaluation requires w > 0 for sqrt(2w) powers");

  std::complex<double> u = std::polar(1.0, p.phi);
  double s = needs_s ? std::sqrt(2.0 * p.w) : 1.0;
  auto ipow = [](std::complex<double> base, int e) {
    std::complex<double> acc{1.0, 0.0};
    std::complex<double> b = e < 0 ? 1.0 / base : base;
    for (int i = 0; i < std::abs(e); ++i) acc *= b;
    return acc;
  };
  auto rpow = [](double base, int e) { return std::pow(base, e); };

  std::complex<double> numv{0.0, 0.0};
  for (const auto& [m, c] : num_) {
    std::complex<double> t = c.to_complex();
    t *= rpow(p.r, m.er);
    t *= ipow(u, m.eu);
    t *= rpow(p.a, m.ea);
    t *= rpow(p.b, m.eb);
    t *= rpow(s, m.es);
    numv += t;
  }
  std::complex<double> denv{1.0, 0.0};
  double min_factor = 2.0 * std::sin(std::max(p.margin, 0.0));
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (den_[i] == 0) continue;
    int j = static_cast<int>(i) % kk;
    double sigma = static_cast<int>(i) < kk ? 1.0 : -1.0;
    std::complex<double> fac =
        std::polar(1.0, 4.0 * j * pi / (2.0 * kk)) * u * u + sigma;
    if (std::abs(fac) < min_factor)
      throw PoleProximityError("denominator factor below pole margin");
    for (std::uint32_t m = 0; m < den_[i]; ++m) denv *= fac;
  }
  return numv / denv;
}

// --- text form ---------------------------------------------------------------

namespace {

std::string rational_str(const Rational& q) { return q.get_str(); }

void append_monomial_vars(std::ostringstream& os, const Monomial& m, int whole_w, int rem_s) {
  auto piece = [&os](const char* name, int e) {
    if (e == 0) return;
    os << "*" << name;
    if (e != 1) os << "^" << e;
  };
  piece("r", m.er);
  piece("u", m.eu);
  piece("a", m.ea);
  piece("b", m.eb);
  piece("w", whole_w);
  piece("s", rem_s);
}

}  // namespace

std::string Coefficient::to_string() const {
  if (detached() || num_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = num_.rbegin(); it != num_.rend(); ++it) {
    const Monomial& m = it->first;
    // s^es renders as w^half * s^rem with the 2^half folded into the scalar.
    int rem = ((m.es % 2) + 2) % 2;
    int half = (m.es - rem) / 2;
    Rational fold = half >= 0 ? Rational(mpz_class(1) << half)
                              : Rational(1, mpz_class(1) << (-half));
    CyclotomicNumber c = it->second * fold;
    bool has_vars = m.er || m.eu || m.ea || m.eb || half || rem;

    std::string scalar;
    bool negated = false;
    if (c.is_rational()) {
      Rational q = c.rational_part();
      if (q < 0) {
        negated = true;
        q = -q;
      }
      if (q == 1 && has_vars) scalar.clear();
      else scalar = rational_str(q);
    } else {
      scalar = "(" + c.to_string() + ")";
    }

    if (first) {
      if (negated) os << "-";
      first = false;
    } else {
      os << (negated ? " - " : " + ");
    }
    if (scalar.empty()) {
      std::ostringstream tmp;
      append_monomial_vars(tmp, m, half, rem);
      std::string vars = tmp.str();
      os << (vars.empty() ? "1" : vars.substr(1));
    } else {
      os << scalar;
      append_monomial_vars(os, m, half, rem);
    }
  }
  std::string num_str = os.str();
  if (denominator_trivial()) return num_str;

  std::ostringstream d;
  bool first_fac = true;
  int kk = k();
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (den_[i] == 0) continue;
    if (!first_fac) d << " * ";
    first_fac = false;
    int j = static_cast<int>(i) % kk;
    const char* sign = static_cast<int>(i) < kk ? "+" : "-";
    d << "(";
    if (j != 0) d << "zeta^" << 4 * j << "*";
    d << "u^2 " << sign << " 1)";
    if (den_[i] != 1) d << "^" << den_[i];
  }
  return "(" + num_str + ") / " + d.str();
}

// --- parser ------------------------------------------------------------------

namespace {

struct CoeffParser {
  const std::string& s;
  std::size_t pos = 0;
  const CycloFieldPtr& f;

  CoeffParser(const std::string& text, const CycloFieldPtr& field) : s(text), f(field) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  long parse_int() {
    skip_ws();
    bool neg = eat('-');
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw ParseError("expected integer at position " + std::to_string(pos));
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }

  Coefficient parse_expr() {
    Coefficient acc = Coefficient::zero(f);
    int sign = 1;
    if (eat('-')) sign = -1;
    while (true) {
      Coefficient t = parse_term();
      if (sign < 0) t = -t;
      acc += t;
      skip_ws();
      if (eat('+')) sign = 1;
      else if (eat('-')) sign = -1;
      else break;
    }
    return acc;
  }

  Coefficient parse_term() {
    Coefficient acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  int parse_exponent() {
    if (eat('^')) return static_cast<int>(parse_int());
    return 1;
  }

  Coefficient parse_factor() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of coefficient literal");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Coefficient inner = parse_expr();
      if (!eat(')')) throw ParseError("missing ')' in coefficient literal");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long n = parse_int();
      skip_ws();
      if (pos < s.size() && s[pos] == '/' && pos + 1 < s.size() &&
          std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
        ++pos;
        long d = parse_int();
        return Coefficient::scalar(f, Rational(n, d));
      }
      return Coefficient::scalar(f, Rational(n));
    }
    if (s.compare(pos, 4, "zeta") == 0) {
      pos += 4;
      int e = parse_exponent();
      return Coefficient::scalar(CyclotomicNumber::make(f, e, Rational(1)));
    }
    switch (c) {
      case 'r': ++pos; return Coefficient::var_r(f, parse_exponent());
      case 'u': ++pos; return Coefficient::var_u(f, parse_exponent());
      case 'a': ++pos; return Coefficient::var_a(f, parse_exponent());
      case 'b': ++pos; return Coefficient::var_b(f, parse_exponent());
      case 'w': ++pos; return Coefficient::omega(f, parse_exponent());
      case 's': ++pos; return Coefficient::var_s(f, parse_exponent());
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "' in coefficient literal");
  }
};

}  // namespace

Coefficient Coefficient::parse(const CycloFieldPtr& f, const std::string& text) {
  // Split "num / den" at a top-level slash followed by '('.
  int depth = 0;
  std::size_t split = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == '/' && depth == 0) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '(') {
        split = i;
        break;
      }
    }
  }
  std::string num_text = split == std::string::npos ? text : text.substr(0, split);
  CoeffParser np(num_text, f);
  Coefficient out = np.parse_expr();
  if (!np.at_end()) throw ParseError("trailing characters in coefficient numerator");
  if (split == std::string::npos) return out;

  std::string den_text = text.substr(split + 1);
  // Tolerate one grouping paren around the whole factor product.
  {
    std::size_t b = 0, e = den_text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(den_text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(den_text[e - 1]))) --e;
    if (b < e && den_text[b] == '(' && den_text[e - 1] == ')') {
      int d = 0;
      bool wraps = true;
      for (std::size_t i = b; i < e; ++i) {
        if (den_text[i] == '(') ++d;
        else if (den_text[i] == ')') {
          --d;
          if (d == 0 && i + 1 < e) {
            wraps = false;
            break;
          }
        }
      }
      // Strip only if the interior still starts with a factor paren.
      if (wraps) {
        std::size_t inner = b + 1;
        while (inner < e - 1 && std::isspace(static_cast<unsigned char>(den_text[inner]))) ++inner;
        if (inner < e - 1 && den_text[inner] == '(')
          den_text = den_text.substr(b + 1, e - 1 - (b + 1));
      }
    }
  }
  CoeffParser dp(den_text, f);
  int kk = f->k();
  std::vector<std::uint32_t> den(2 * kk, 0);
  while (true) {
    if (!dp.eat('(')) throw ParseError("expected '(' in coefficient denominator");
    Coefficient fac = dp.parse_expr();
    if (!dp.eat(')')) throw ParseError("missing ')' in coefficient denominator");
    int e = 1;
    if (dp.eat('^')) e = static_cast<int>(dp.parse_int());
    if (e <= 0) throw ParseError("denominator exponent must be positive");
    bool matched = false;
    for (int idx = 0; idx < 2 * kk; ++idx) {
      Coefficient ref;
      ref.attach(f);
      ref.num_ = CoefficientOps::factor_poly(f, idx);
      Coefficient diff = fac;
      diff -= ref;
      if (diff.is_zero()) {
        den[idx] += static_cast<std::uint32_t>(e);
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError("denominator factor is not a pole factor of this k");
    if (!dp.eat('*')) break;
  }
  if (!dp.at_end()) throw ParseError("trailing characters in coefficient denominator");
  Coefficient result;
  result.field_ = f;
  result.num_ = out.num_;
  result.den_ = std::move(den);
  if (!out.denominator_trivial())
    throw ParseError("nested denominators are not part of the grammar");
  result.normalize();
  return result;
}

// --- accumulation ------------------------------------------------------------

void CoefficientSum::add(const Coefficient& c, bool negate) {
  if (c.detached() || c.is_zero()) return;
  if (!field_) field_ = c.field();
  else if (field_ != c.field())
    throw std::invalid_argument("coefficient operands have mixed k");
  auto& bucket = buckets_[c.denominator()];
  for (const auto& [m, v] : c.numerator()) add_term(bucket, m, negate ? -v : v);
  if (bucket.empty()) buckets_.erase(c.denominator());
}

void CoefficientSum::add_product(const Coefficient& x, const Coefficient& y, long scale,
                                 bool negate) {
  if (x.detached() || y.detached() || x.is_zero() || y.is_zero() || scale == 0) return;
  if (x.field() != y.field())
    throw std::invalid_argument("coefficient operands have mixed k");
  if (!field_) field_ = x.field();
  else if (field_ != x.field())
    throw std::invalid_argument("coefficient operands have mixed k");
  std::vector<std::uint32_t> den(x.denominator().size());
  for (std::size_t i = 0; i < den.size(); ++i) den[i] = x.denominator()[i] + y.denominator()[i];
  Rational q(negate ? -scale : scale);
  auto& bucket = buckets_[den];
  for (const auto& [mx, cx] : x.numerator()) {
    CyclotomicNumber cxs = q == 1 ? cx : cx * q;
    for (const auto& [my, cy] : y.numerator()) add_term(bucket, mx + my, cxs * cy);
  }
  if (bucket.empty()) buckets_.erase(den);
}

Coefficient CoefficientSum::finalize() const {
  if (!field_ || buckets_.empty()) return field_ ? Coefficient::zero(field_) : Coefficient();
  int kk = field_->k();
  std::vector<std::uint32_t> lcm(2 * kk, 0);
  for (const auto& [den, nm] : buckets_)
    for (std::size_t i = 0; i < den.size(); ++i) lcm[i] = std::max(lcm[i], den[i]);
  NumMap total;
  for (const auto& [den, nm] : buckets_) {
    std::vector<std::uint32_t> up(den.size());
    bool trivial = true;
    for (std::size_t i = 0; i < den.size(); ++i) {
      up[i] = lcm[i] - den[i];
      trivial = trivial && up[i] == 0;
    }
    if (trivial) add_map(total, nm);
    else add_map(total, map_mul(nm, CoefficientOps::factor_product(field_, up)));
  }
  return Coefficient::fraction(field_, std::move(total), std::move(lcm));
}

}  // namespace ttw
