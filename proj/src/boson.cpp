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

#include "ttw/boson.hpp"

#include <algorithm>
#include <stdexcept>

namespace ttw {

namespace {

long floor_div(long n, long d) {
  long q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

// Base pairs before index normalization, i0 in [0, k).
OperatorExpr build_pair(const TTWParams& P, long i0, bool dagger, bool sine_profile) {
  const auto& f = P.field;
  Coefficient cos_t = Coefficient::trig_fn(f, TrigKind::cos, i0);
  Coefficient sin_t = Coefficient::trig_fn(f, TrigKind::sin, i0);
  Coefficient radial_profile = sine_profile ? sin_t : cos_t;
  Coefficient angular_profile = sine_profile ? cos_t : sin_t;
  // For the cosine pair the angular part enters with -sin, for the sine pair
  // with +cos; daggering flips both derivative contributions.
  int angular_sign = sine_profile ? 1 : -1;
  int deriv_sign = dagger ? -1 : 1;

  Coefficient wr = Coefficient::omega(f) * Coefficient::var_r(f);
  Coefficient rinv = Coefficient::var_r(f, -1);
  OperatorExpr out = OperatorExpr::from_coefficient(radial_profile * wr);
  out += build_Dr(P).scale(radial_profile * Rational(deriv_sign));
  out += build_Dphi(P).scale(angular_profile * rinv * Rational(angular_sign * deriv_sign));
  return out.scale(Coefficient::var_s(f, -1));
}

OperatorExpr build_indexed(const TTWParams& P, long i, bool dagger, bool sine_profile) {
  long lambda = floor_div(i, P.k);
  long i0 = i - lambda * P.k;
  OperatorExpr base = build_pair(P, i0, dagger, sine_profile);
  return (lambda % 2 == 0) ? base : -base;
}

void sort_reports(std::vector<VerificationReport>& v) {
  std::sort(v.begin(), v.end(),
            [](const VerificationReport& x, const VerificationReport& y) { return x.name < y.name; });
}

// Cache of the A basis; the builders are pure but the check suites reuse
// the same handful of operators many times.
struct BosonBasis {
  const TTWParams& P;
  std::vector<OperatorExpr> a, adag;

  explicit BosonBasis(const TTWParams& params) : P(params) {
    for (int i = 0; i < P.k; ++i) {
      a.push_back(build_A(P, i, false));
      adag.push_back(build_A(P, i, true));
    }
  }
  OperatorExpr at(long i, bool dagger) const {
    long lambda = floor_div(i, P.k);
    long i0 = i - lambda * P.k;
    const OperatorExpr& base = dagger ? adag[i0] : a[i0];
    return (lambda % 2 == 0) ? base : -base;
  }
};

}  // namespace

OperatorExpr build_A(const TTWParams& P, long i, bool dagger) {
  return build_indexed(P, i, dagger, false);
}

OperatorExpr build_B(const TTWParams& P, long i, bool dagger) {
  return build_indexed(P, i, dagger, true);
}

OperatorExpr build_B_from_A(const TTWParams& P, long i, bool dagger) {
  OperatorExpr sum = OperatorExpr::zero(P.field);
  for (long j = 0; j < P.k; ++j)
    sum += build_A(P, j, dagger).scale(CyclotomicNumber::sin_angle(P.field, i - j));
  return sum.scale(Rational(2, P.k));
}

OperatorExpr build_H(const TTWParams& P, long i) {
  OperatorExpr a = build_A(P, i, false);
  OperatorExpr ad = build_A(P, i, true);
  return anticommutator(ad, a).scale(Rational(1, 2));
}

OperatorExpr build_H_explicit_scaled(const TTWParams& P, long i) {
  const auto& f = P.field;
  const int k = P.k;
  Coefficient cos_t = Coefficient::trig_fn(f, TrigKind::cos, i);
  Coefficient sin_t = Coefficient::trig_fn(f, TrigKind::sin, i);
  Coefficient rinv = Coefficient::var_r(f, -1);
  Coefficient rinv2 = Coefficient::var_r(f, -2);
  Coefficient a = Coefficient::var_a(f);
  Coefficient b = Coefficient::var_b(f);
  OperatorExpr dr = build_Dr(P);
  OperatorExpr dphi = build_Dphi(P);

  OperatorExpr out = (dr * dr).scale(-(cos_t * cos_t));
  out += (dr * dphi + dphi * dr).scale(sin_t * cos_t * rinv);
  out += (dphi * dphi).scale(-(sin_t * sin_t) * rinv2);

  OperatorExpr dr_bracket = OperatorExpr::from_coefficient(sin_t * sin_t);
  OperatorExpr dphi_bracket = OperatorExpr::from_coefficient(sin_t * cos_t * Rational(-2));
  for (int l = 0; l < k; ++l) {
    CyclotomicNumber c_li = CyclotomicNumber::cos_angle(f, l - i);
    CyclotomicNumber s_li = CyclotomicNumber::sin_angle(f, l - i);
    GroupElement ga{(k + 2 * l) % P.two_k(), 1};
    GroupElement gb{(2 * l) % P.two_k(), 1};
    dr_bracket += OperatorExpr::term(a * (c_li * c_li) * Rational(2), 0, 0, ga);
    dr_bracket += OperatorExpr::term(b * (s_li * s_li) * Rational(2), 0, 0, gb);
    dphi_bracket += OperatorExpr::term(a * (s_li * c_li) * Rational(-2), 0, 0, ga);
    dphi_bracket += OperatorExpr::term(b * (s_li * c_li) * Rational(2), 0, 0, gb);
  }
  out += (dr_bracket.scale(rinv * Rational(-1))) * dr;
  out += (dphi_bracket.scale(rinv2)) * dphi;
  out += OperatorExpr::from_coefficient(Coefficient::omega(f, 2) * Coefficient::var_r(f, 2) *
                                        cos_t * cos_t);
  return out;
}

OperatorExpr boson_commutator_rhs(const TTWParams& P, long i, long j) {
  const auto& f = P.field;
  const int k = P.k;
  Coefficient a = Coefficient::var_a(f);
  Coefficient b = Coefficient::var_b(f);
  OperatorExpr out =
      OperatorExpr::from_coefficient(Coefficient::scalar(CyclotomicNumber::cos_angle(f, j - i)));
  for (int l = 0; l < k; ++l) {
    CyclotomicNumber ca = CyclotomicNumber::cos_angle(f, l - i) * CyclotomicNumber::cos_angle(f, l - j);
    CyclotomicNumber sb = CyclotomicNumber::sin_angle(f, l - i) * CyclotomicNumber::sin_angle(f, l - j);
    out += OperatorExpr::term(a * ca * Rational(2), 0, 0,
                              GroupElement{(k + 2 * l) % P.two_k(), 1});
    out += OperatorExpr::term(b * sb * Rational(2), 0, 0, GroupElement{(2 * l) % P.two_k(), 1});
  }
  return out;
}

OperatorExpr oscillator_commutator_rhs(const TTWParams& P, long i) {
  const auto& f = P.field;
  const int k = P.k;
  BosonBasis basis(P);
  auto prod = [&](long x, long y) { return basis.at(x, true) * basis.at(y, false); };
  Coefficient a = Coefficient::var_a(f);
  Coefficient b = Coefficient::var_b(f);

  OperatorExpr out = (prod(0, i) - prod(i, 0)).scale(CyclotomicNumber::cos_angle(f, i));

  for (long l = 0; l < k; ++l) {
    CyclotomicNumber c_l = CyclotomicNumber::cos_angle(f, l);
    CyclotomicNumber c_li = CyclotomicNumber::cos_angle(f, l - i);
    CyclotomicNumber s_l = CyclotomicNumber::sin_angle(f, l);
    CyclotomicNumber s_li = CyclotomicNumber::sin_angle(f, l - i);
    OperatorExpr ga = OperatorExpr::group(f, GroupElement{int((k + 2 * l) % P.two_k()), 1});
    OperatorExpr gb = OperatorExpr::group(f, GroupElement{int((2 * l) % P.two_k()), 1});

    OperatorExpr block_a =
        -(prod(0, 2 * k + 2 * l - i) + prod(i, k + 2 * l)).scale(c_l * c_li);
    block_a += (prod(0, 0) - prod(k + 2 * l, k + 2 * l)).scale((c_li * c_li) * Rational(1, 2));
    block_a += (prod(2 * k + 2 * l - i, 2 * k + 2 * l - i) - prod(i, i))
                   .scale((c_l * c_l) * Rational(1, 2));
    out += block_a.scale(a * Rational(2)) * ga;

    OperatorExpr block_b = -(prod(0, k + 2 * l - i) + prod(i, 2 * l)).scale(s_l * s_li);
    block_b += (prod(0, 0) - prod(2 * l, 2 * l)).scale((s_li * s_li) * Rational(1, 2));
    block_b += (prod(k + 2 * l - i, k + 2 * l - i) - prod(i, i))
                   .scale((s_l * s_l) * Rational(1, 2));
    out += block_b.scale(b * Rational(2)) * gb;
  }

  // -(k/4) sin(2i pi/k) sum_l sin(2l pi/k) (a^2 - 2ab R^k + b^2) R^(2l)
  CyclotomicNumber s2i = CyclotomicNumber::sin_angle(f, 2 * i);
  Coefficient a2b2 = Coefficient::var_a(f, 2) + Coefficient::var_b(f, 2);
  Coefficient m2ab = Coefficient::var_a(f) * Coefficient::var_b(f) * Rational(-2);
  OperatorExpr tail = OperatorExpr::zero(f);
  for (long l = 0; l < k; ++l) {
    CyclotomicNumber s2l = CyclotomicNumber::sin_angle(f, 2 * l);
    tail += OperatorExpr::term(a2b2 * s2l, 0, 0, GroupElement{int((2 * l) % P.two_k()), 0});
    tail += OperatorExpr::term(m2ab * s2l, 0, 0, GroupElement{int((k + 2 * l) % P.two_k()), 0});
  }
  out += tail.scale(s2i * Rational(-k, 4));
  return out;
}

OperatorExpr build_Y(const TTWParams& P, const Budget* budget, bool reverse_enumeration) {
  const auto& f = P.field;
  const int k = P.k;
  std::vector<OperatorExpr> h;
  for (int i = 0; i < k; ++i) h.push_back(build_H(P, i));

  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = reverse_enumeration ? k - 1 - i : i;

  OperatorExpr total = OperatorExpr::zero(f);
  std::vector<bool> used(k, false);
  // Depth-first walk over permutations; the left product of the current
  // prefix is shared by every permutation below it.
  auto walk = [&](auto&& self, const OperatorExpr& prefix, int depth) -> void {
    for (int idx : order) {
      if (used[idx]) continue;
      used[idx] = true;
      OperatorExpr next = depth == 0 ? h[idx] : prefix.multiply(h[idx], budget);
      if (depth == k - 1) total += next;
      else self(self, next, depth + 1);
      used[idx] = false;
    }
  };
  walk(walk, OperatorExpr::zero(f), 0);
  return total.scale(Coefficient::var_s(f, 2 * k));
}

std::vector<VerificationReport> check_boson_consistency(const TTWParams& P) {
  const int k = P.k;
  std::vector<VerificationReport> out;
  BosonBasis basis(P);
  OperatorExpr R = build_R(P);
  OperatorExpr I = build_I(P);

  for (int i = 0; i < k; ++i) {
    out.push_back(check_equal("A-adjoint-pairing-" + std::to_string(i), k,
                              basis.at(i, false).adjoint(), basis.at(i, true)));
    out.push_back(check_equal("A-R-action-" + std::to_string(i), k,
                              basis.at(i, false).conjugate_by_group(GroupElement::rotation(1, P.two_k())),
                              basis.at(i + 1, false)));
    out.push_back(check_equal("A-I-action-" + std::to_string(i), k,
                              basis.at(i, false).conjugate_by_group(GroupElement::reflection()),
                              -basis.at(k - i, false)));
    out.push_back(check_equal("B-from-A-" + std::to_string(i), k, build_B_from_A(P, i, false),
                              build_B(P, i, false)));
    out.push_back(check_equal("Bdag-from-A-" + std::to_string(i), k, build_B_from_A(P, i, true),
                              build_B(P, i, true)));
  }
  for (long i : {static_cast<long>(k), static_cast<long>(k + 2), -1L, static_cast<long>(2 * k)}) {
    long lambda = floor_div(i, k);
    long i0 = i - lambda * k;
    OperatorExpr expected = (lambda % 2 == 0) ? basis.at(i0, false) : -basis.at(i0, false);
    out.push_back(
        check_equal("A-index-extension-" + std::to_string(i), k, build_A(P, i, false), expected));
  }
  out.push_back(check_equal("B-I-action", k,
                            build_B(P, 0, false).conjugate_by_group(GroupElement::reflection()),
                            -build_B(P, 0, false)));
  sort_reports(out);
  return out;
}

std::vector<VerificationReport> check_linear_relations(const TTWParams& P) {
  const auto& f = P.field;
  const int k = P.k;
  std::vector<VerificationReport> out;
  BosonBasis basis(P);

  OperatorExpr alt = OperatorExpr::zero(f);
  for (int i = 0; i < k; ++i) {
    OperatorExpr t = basis.at(i, false);
    alt += (i % 2 == 0) ? t : -t;
  }
  out.push_back(check_zero("A-alternating-sum", k, alt));

  OperatorExpr cos_sum = OperatorExpr::zero(f);
  for (int i = 0; i < k; ++i)
    cos_sum += basis.at(i, false).scale(CyclotomicNumber::cos_angle(f, i));
  out.push_back(check_equal("A-cosine-sum", k, cos_sum,
                            basis.at(0, false).scale(Rational(k, 2))));

  for (int i = 0; i < 2 * k; ++i) {
    OperatorExpr half = (basis.at(0, false) + basis.at(2 * i, false)).scale(Rational(1, 2));
    out.push_back(check_equal("A-halfsum-" + std::to_string(i), k,
                              basis.at(i, false).scale(CyclotomicNumber::cos_angle(f, i)), half));
    OperatorExpr half_diff = (basis.at(0, false) - basis.at(2 * i, false)).scale(Rational(1, 2));
    out.push_back(check_equal("B-halfsum-" + std::to_string(i), k,
                              build_B(P, i, false).scale(CyclotomicNumber::sin_angle(f, i)),
                              half_diff));
  }
  sort_reports(out);
  return out;
}

std::vector<VerificationReport> check_boson_commutators(const TTWParams& P) {
  const int k = P.k;
  std::vector<VerificationReport> out;
  BosonBasis basis(P);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      std::string suffix = "-" + std::to_string(i) + "-" + std::to_string(j);
      out.push_back(check_zero("A-A-commute" + suffix, k,
                               commutator(basis.at(i, false), basis.at(j, false))));
      out.push_back(check_zero("Adag-Adag-commute" + suffix, k,
                               commutator(basis.at(i, true), basis.at(j, true))));
      OperatorExpr lhs = commutator(basis.at(i, false), basis.at(j, true));
      out.push_back(check_equal("A-Adag-closed-form" + suffix, k, lhs,
                                boson_commutator_rhs(P, i, j)));
      if (i != j)
        out.push_back(check_equal("A-Adag-symmetric" + suffix, k, lhs,
                                  commutator(basis.at(j, false), basis.at(i, true))));
    }
  }
  sort_reports(out);
  return out;
}

std::vector<VerificationReport> check_H_structure(const TTWParams& P) {
  const auto& f = P.field;
  const int k = P.k;
  std::vector<VerificationReport> out;
  std::vector<OperatorExpr> h;
  for (int i = 0; i < k; ++i) h.push_back(build_H(P, i));
  Coefficient s2 = Coefficient::var_s(f, 2);

  for (int i = 0; i < k; ++i) {
    out.push_back(check_equal("H-R-action-" + std::to_string(i), k,
                              h[i].conjugate_by_group(GroupElement::rotation(1, P.two_k())),
                              h[(i + 1) % k]));
    out.push_back(check_equal("H-I-action-" + std::to_string(i), k,
                              h[i].conjugate_by_group(GroupElement::reflection()),
                              h[(k - i) % k]));
    out.push_back(check_equal("H-explicit-form-" + std::to_string(i), k, h[i].scale(s2),
                              build_H_explicit_scaled(P, i)));
    out.push_back(
        check_equal("H-self-adjoint-" + std::to_string(i), k, h[i].adjoint(), h[i]));
  }

  OperatorExpr sum = OperatorExpr::zero(f);
  for (const auto& hi : h) sum += hi;
  out.push_back(check_equal("H-sum-rule", k, sum.scale(s2),
                            build_extended_H(P).scale(Rational(k, 2))));
  sort_reports(out);
  return out;
}

std::vector<VerificationReport> check_H_commutators(const TTWParams& P) {
  const int k = P.k;
  std::vector<VerificationReport> out;
  std::vector<OperatorExpr> h;
  for (int i = 0; i < k; ++i) h.push_back(build_H(P, i));
  OperatorExpr hext = build_extended_H(P);

  for (int i = 0; i < k; ++i) {
    out.push_back(check_equal("H0-Hi-commutator-" + std::to_string(i), k,
                              commutator(h[0], h[i]), oscillator_commutator_rhs(P, i)));
    out.push_back(check_zero("H-integral-of-motion-" + std::to_string(i), k,
                             commutator(h[i], hext)));
  }
  sort_reports(out);
  return out;
}

void check_superintegrability(const TTWParams& P, const Budget* budget,
                              std::vector<VerificationReport>& out, OperatorExpr* y_out) {
  const auto& f = P.field;
  const int k = P.k;

  OperatorExpr y = build_Y(P, budget);
  if (y_out) *y_out = y;

  out.push_back(check_equal("Y-R-invariance", k,
                            y.conjugate_by_group(GroupElement::rotation(1, P.two_k())), y));
  out.push_back(
      check_equal("Y-I-invariance", k, y.conjugate_by_group(GroupElement::reflection()), y));
  out.push_back(check_equal("Y-self-adjoint", k, y.adjoint(), y));

  OperatorExpr y_proj = y.project_identity();
  out.push_back(check_condition("Y-projected-order", k, y_proj.max_order() == 2 * k,
                                "max derivative order " + std::to_string(y_proj.max_order()) +
                                    ", expected " + std::to_string(2 * k)));

  auto t0 = std::chrono::steady_clock::now();
  auto lap_ms = [&t0] {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - t0).count();
    t0 = now;
    return ms;
  };

  OperatorExpr hext = build_extended_H(P);
  lap_ms();
  out.push_back(check_zero("H-Y-commute", k, commutator(hext, y, budget)));
  out.back().wall_ms = lap_ms();

  OperatorExpr xext = build_extended_X(P);
  lap_ms();
  OperatorExpr xy = commutator(xext, y, budget);
  OperatorExpr xy_proj = xy.project_identity();
  double xy_ms = lap_ms();

  // Leading symbol of the projected commutator on d_phi d_r^(2k):
  //   -2^(4-2k) k! k sin(k phi) cos(k phi),
  // with sin(k phi) cos(k phi) = -(i/4)(u^(2k) - u^(-2k)).
  Rational fact(1);
  for (int i = 2; i <= k; ++i) fact *= i;
  Rational prefactor = fact * k;
  int e = 2 * k - 4;
  prefactor /= Rational(mpz_class(1) << e);
  CyclotomicNumber quarter_i =
      CyclotomicNumber::imaginary_unit(f) * Rational(-1, 4) * (-prefactor);
  Coefficient lead = Coefficient::monomial(quarter_i, Monomial{0, 2 * k, 0, 0, 0}) +
                     Coefficient::monomial(-quarter_i, Monomial{0, -2 * k, 0, 0, 0});
  Coefficient got = xy_proj.coefficient_of(2 * k, 1);
  bool lead_ok = got.equals(lead) && !lead.is_zero();
  out.push_back(check_condition("X-Y-leading-coefficient", k, lead_ok,
                                "coefficient of Dphi Dr^" + std::to_string(2 * k) + ": " +
                                    got.to_string()));
  out.back().wall_ms = xy_ms;

  lap_ms();
  out.push_back(check_equal("X-Y-projection-compatible", k, xy_proj,
                            commutator(xext.project_identity(), y_proj, budget)));
  out.back().wall_ms = lap_ms();
}

std::vector<VerificationReport> check_reduction(const TTWParams& P, const OperatorExpr* y) {
  const auto& f = P.field;
  const int k = P.k;
  std::vector<VerificationReport> out;

  out.push_back(check_equal("plain-Dr", k, build_Dr(P).set_ab_zero(), OperatorExpr::deriv_r(f)));
  out.push_back(
      check_equal("plain-Dphi", k, build_Dphi(P).set_ab_zero(), OperatorExpr::deriv_phi(f)));
  OperatorExpr h_plain = build_plain_h(P);
  out.push_back(check_equal("plain-extended-H", k, build_extended_H(P).set_ab_zero(), h_plain));
  out.push_back(check_zero("plain-Dr-Dphi-commute", k,
                           commutator(build_Dr(P), build_Dphi(P)).set_ab_zero()));

  OperatorExpr sum = OperatorExpr::zero(f);
  for (int i = 0; i < k; ++i) sum += build_H(P, i);
  out.push_back(check_equal("plain-H-sum", k, sum.scale(Coefficient::var_s(f, 2)).set_ab_zero(),
                            h_plain.scale(Rational(k, 2))));

  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      out.push_back(check_equal(
          "plain-boson-commutator-" + std::to_string(i) + "-" + std::to_string(j), k,
          commutator(build_A(P, i, false), build_A(P, j, true)).set_ab_zero(),
          OperatorExpr::from_coefficient(
              Coefficient::scalar(CyclotomicNumber::cos_angle(f, j - i)))));

  OperatorExpr y_local;
  const OperatorExpr* y_use = y;
  if (!y_use && k == 3) {
    y_local = build_Y(P);
    y_use = &y_local;
  }
  if (y_use) {
    OperatorExpr y_red = y_use->project_identity().set_ab_zero();
    out.push_back(check_zero("plain-h-Y-commute", k, commutator(h_plain, y_red)));
  }
  sort_reports(out);
  return out;
}

}  // namespace ttw
