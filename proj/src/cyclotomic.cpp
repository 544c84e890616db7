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

#include "ttw/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ttw {

namespace {

// Dense little-endian polynomials over Q, used only to set up the field.

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

// Division with remainder; divisor must have an invertible leading coefficient.
std::pair<Poly, Poly> poly_divmod(Poly num, const Poly& den) {
  if (den.empty()) throw std::logic_error("polynomial division by zero");
  Poly q;
  if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, Rational(0));
  const Rational& lead = den.back();
  while (num.size() >= den.size()) {
    Rational c = num.back() / lead;
    std::size_t shift = num.size() - den.size();
    q[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    trim(num);
    if (num.size() < den.size()) break;
  }
  trim(q);
  return {q, num};
}

std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

// Phi_n via Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
Poly cyclotomic_poly(int n, std::map<int, Poly>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  Poly num(n + 1, Rational(0));
  num[0] = -1;
  num[n] = 1;
  for (int d : divisors(n)) {
    if (d == n) continue;
    auto [q, r] = poly_divmod(num, cyclotomic_poly(d, memo));
    if (!r.empty()) throw std::logic_error("cyclotomic division left a remainder");
    num = q;
  }
  memo[n] = num;
  return num;
}

long mod_nonneg(long x, long m) {
  long r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

CycloField::CycloField(int order, int k) : order_(order), k_(k) {
  std::map<int, Poly> memo;
  min_poly_ = cyclotomic_poly(order, memo);
  degree_ = static_cast<int>(min_poly_.size()) - 1;

  // Reduction rows: zeta^e for e in [degree, 2*degree-2], each obtained by
  // shifting the previous one and folding the top coordinate through the
  // monic minimal polynomial.
  std::vector<Rational> cur(degree_, Rational(0));
  // zeta^degree = -(p_0 + p_1 zeta + ... + p_{degree-1} zeta^{degree-1})
  for (int i = 0; i < degree_; ++i) cur[i] = -min_poly_[i];
  red_.push_back(cur);
  for (int e = degree_ + 1; e <= 2 * degree_ - 2; ++e) {
    std::vector<Rational> next(degree_, Rational(0));
    Rational top = cur[degree_ - 1];
    for (int i = degree_ - 1; i >= 1; --i) next[i] = cur[i - 1];
    next[0] = 0;
    if (top != 0)
      for (int i = 0; i < degree_; ++i) next[i] += top * red_[0][i];
    red_.push_back(next);
    cur = next;
  }

  // zeta^m for m in [0, order).
  std::vector<Rational> p(degree_, Rational(0));
  p[0] = 1;
  pow_.push_back(p);
  for (int m = 1; m < order_; ++m) {
    std::vector<Rational> next(degree_, Rational(0));
    Rational top = p[degree_ - 1];
    for (int i = degree_ - 1; i >= 1; --i) next[i] = p[i - 1];
    next[0] = 0;
    if (top != 0)
      for (int i = 0; i < degree_; ++i) next[i] += top * red_[0][i];
    pow_.push_back(next);
    p = next;
  }
}

CycloFieldPtr CycloField::make(int order) {
  if (order % 4 != 0)
    throw std::invalid_argument("cyclotomic order must be 4k with k odd and >= 3");
  int k = order / 4;
  if (k < 3 || k % 2 == 0)
    throw std::invalid_argument("cyclotomic order must be 4k with k odd and >= 3");

  static std::mutex mu;
  static std::map<int, std::weak_ptr<const CycloField>> registry;
  std::lock_guard<std::mutex> lock(mu);
  if (auto cached = registry[order].lock()) return cached;
  CycloFieldPtr f(new CycloField(order, k));
  registry[order] = f;
  return f;
}

const std::vector<Rational>& CycloField::zeta_power(long m) const {
  return pow_[mod_nonneg(m, order_)];
}

const std::vector<Rational>& CycloField::reduction_row(int e) const {
  return red_.at(e - degree_);
}

CyclotomicNumber::CyclotomicNumber(CycloFieldPtr f, std::vector<Rational> coords)
    : field_(std::move(f)), coords_(std::move(coords)) {}

CyclotomicNumber CyclotomicNumber::zero(const CycloFieldPtr& f) {
  return CyclotomicNumber(f, std::vector<Rational>(f->degree(), Rational(0)));
}

CyclotomicNumber CyclotomicNumber::one(const CycloFieldPtr& f) {
  return from_rational(f, Rational(1));
}

namespace {

// mpq_class(num, den) does not canonicalize; normalize every rational that
// enters from the outside so GMP arithmetic stays sound.
Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

}  // namespace

CyclotomicNumber CyclotomicNumber::from_rational(const CycloFieldPtr& f, const Rational& c) {
  auto v = std::vector<Rational>(f->degree(), Rational(0));
  v[0] = canonical(c);
  return CyclotomicNumber(f, std::move(v));
}

CyclotomicNumber CyclotomicNumber::make(const CycloFieldPtr& f, long m, const Rational& c) {
  const auto& row = f->zeta_power(m);
  Rational q = canonical(c);
  std::vector<Rational> v(f->degree());
  for (int i = 0; i < f->degree(); ++i) v[i] = row[i] * q;
  return CyclotomicNumber(f, std::move(v));
}

CyclotomicNumber CyclotomicNumber::make(int order, long m, const Rational& c) {
  return make(CycloField::make(order), m, c);
}

CyclotomicNumber CyclotomicNumber::imaginary_unit(const CycloFieldPtr& f) {
  return make(f, f->k(), Rational(1));
}

CyclotomicNumber CyclotomicNumber::cos_angle(const CycloFieldPtr& f, long j) {
  return (make(f, 2 * j, Rational(1)) + make(f, -2 * j, Rational(1))) * Rational(1, 2);
}

CyclotomicNumber CyclotomicNumber::sin_angle(const CycloFieldPtr& f, long j) {
  // (zeta^(2j) - zeta^(-2j)) / (2i) with 1/i = -i = -zeta^k.
  CyclotomicNumber diff = make(f, 2 * j, Rational(1)) - make(f, -2 * j, Rational(1));
  return (diff * make(f, f->k(), Rational(1))) * Rational(-1, 2);
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational CyclotomicNumber::rational_part() const {
  return coords_.empty() ? Rational(0) : coords_[0];
}

void CyclotomicNumber::require_same_field(const CyclotomicNumber& o) const {
  if (field_ != o.field_)
    throw std::invalid_argument("cyclotomic operands belong to different fields");
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  if (detached()) return *this;
  std::vector<Rational> v(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) v[i] = -coords_[i];
  return CyclotomicNumber(field_, std::move(v));
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.detached()) return *this;
  if (detached()) {
    *this = o;
    return *this;
  }
  require_same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
  *this += -o;
  return *this;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.detached() || b.detached()) return CyclotomicNumber();
  a.require_same_field(b);
  const auto& f = a.field_;
  int d = f->degree();
  // Most scalars in practice are rational; skip the convolution for them.
  if (a.is_rational()) {
    const Rational& q = a.coords_[0];
    std::vector<Rational> out(d, Rational(0));
    if (q != 0)
      for (int i = 0; i < d; ++i)
        if (b.coords_[i] != 0) out[i] = b.coords_[i] * q;
    return CyclotomicNumber(f, std::move(out));
  }
  if (b.is_rational()) return b * a;
  std::vector<Rational> conv(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (a.coords_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.coords_[j] == 0) continue;
      conv[i + j] += a.coords_[i] * b.coords_[j];
    }
  }
  std::vector<Rational> out(d, Rational(0));
  for (int e = 0; e < d; ++e) out[e] = conv[e];
  for (int e = d; e <= 2 * d - 2; ++e) {
    if (conv[e] == 0) continue;
    const auto& row = f->reduction_row(e);
    for (int i = 0; i < d; ++i) out[i] += conv[e] * row[i];
  }
  return CyclotomicNumber(f, std::move(out));
}

CyclotomicNumber CyclotomicNumber::operator*(const Rational& c) const {
  if (detached()) return *this;
  Rational q = canonical(c);
  std::vector<Rational> v(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) v[i] = coords_[i] * q;
  return CyclotomicNumber(field_, std::move(v));
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (detached() || is_zero()) throw DivisionByZeroError();
  // Extended Euclid in Q[x] against the minimal polynomial: s*f + t*Phi = g
  // with g a nonzero constant since Phi is irreducible.
  Poly f(coords_.begin(), coords_.end());
  trim(f);
  Poly r0 = field_->min_poly();
  Poly r1 = f;
  Poly s0 = {};            // coefficient of f in r0 = Phi
  Poly s1 = {Rational(1)};  // coefficient of f in r1 = f
  while (true) {
    auto [q, r2] = poly_divmod(r0, r1);
    if (r2.empty()) break;
    Poly qs = poly_mul(q, s1);
    Poly s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.size() != 1)
    throw std::logic_error("cyclotomic polynomial is not irreducible over Q");
  Rational g = r1[0];
  auto [q, rem] = poly_divmod(s1, field_->min_poly());
  (void)q;
  std::vector<Rational> v(field_->degree(), Rational(0));
  for (std::size_t i = 0; i < rem.size(); ++i) v[i] = rem[i] / g;
  return CyclotomicNumber(field_, std::move(v));
}

CyclotomicNumber CyclotomicNumber::conjugate() const {
  if (detached()) return *this;
  CyclotomicNumber acc = zero(field_);
  for (int e = 0; e < field_->degree(); ++e) {
    if (coords_[e] == 0) continue;
    acc += make(field_, -e, coords_[e]);
  }
  return acc;
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const {
  if (detached() && o.detached()) return true;
  if (detached()) return o.is_zero();
  if (o.detached()) return is_zero();
  require_same_field(o);
  return coords_ == o.coords_;
}

std::complex<double> CyclotomicNumber::to_complex() const {
  if (detached()) return {0.0, 0.0};
  const double angle = std::numbers::pi / (2.0 * field_->k());
  std::complex<double> zeta = std::polar(1.0, angle);
  std::complex<double> acc{0.0, 0.0};
  for (int e = field_->degree() - 1; e >= 0; --e)
    acc = acc * zeta + std::complex<double>(coords_[e].get_d(), 0.0);
  return acc;
}

std::string CyclotomicNumber::to_string() const {
  if (detached() || is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int e = field_->degree() - 1; e >= 0; --e) {
    const Rational& c = coords_[e];
    if (c == 0) continue;
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    os << a.get_str() << "*zeta^" << e;
  }
  return os.str();
}

namespace {

struct CycloParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit CycloParser(const std::string& text) : s(text) {}

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
  bool peek_digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  long parse_int() {
    skip_ws();
    bool neg = eat('-');
    if (!neg) eat('+');
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw std::invalid_argument("expected integer in cyclotomic literal");
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }
  Rational parse_rational() {
    long n = parse_int();
    skip_ws();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      long d = parse_int();
      return Rational(n, d);
    }
    return Rational(n);
  }
  bool match_word(const char* w) {
    skip_ws();
    std::size_t len = std::string(w).size();
    if (s.compare(pos, len, w) == 0) {
      pos += len;
      return true;
    }
    return false;
  }
};

}  // namespace

CyclotomicNumber CyclotomicNumber::parse(const CycloFieldPtr& f, const std::string& text) {
  CycloParser p(text);
  CyclotomicNumber acc = zero(f);
  bool expect_term = true;
  int sign = 1;
  while (true) {
    p.skip_ws();
    if (p.pos >= p.s.size()) break;
    if (!expect_term) {
      if (p.eat('+')) {
        sign = 1;
      } else if (p.eat('-')) {
        sign = -1;
      } else {
        throw std::invalid_argument("unexpected character in cyclotomic literal");
      }
      expect_term = true;
      continue;
    }
    if (p.eat('-')) sign = -sign;
    Rational c(1);
    bool have_coeff = false;
    if (p.peek_digit()) {
      c = p.parse_rational();
      have_coeff = true;
    }
    long e = 0;
    bool have_zeta = false;
    if (have_coeff) {
      if (p.eat('*')) {
        if (!p.match_word("zeta")) throw std::invalid_argument("expected zeta after '*'");
        have_zeta = true;
      }
    } else {
      if (!p.match_word("zeta")) throw std::invalid_argument("expected term in cyclotomic literal");
      have_zeta = true;
    }
    if (have_zeta && p.eat('^')) e = p.parse_int();
    else if (have_zeta) e = 1;
    acc += make(f, e, c * sign);
    sign = 1;
    expect_term = false;
  }
  if (expect_term) throw std::invalid_argument("empty cyclotomic literal");
  return acc;
}

}  // namespace ttw
