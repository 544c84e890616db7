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

#include "ttw/dunkl.hpp"

#include <algorithm>
#include <stdexcept>

namespace ttw {

TTWParams TTWParams::make(int k_value) {
  if (k_value < 3 || k_value % 2 == 0)
    throw std::invalid_argument(
        "k must be odd and >= 3: the dependent boson operators and the "
        "integrals built from them are only defined there");
  TTWParams p;
  p.k = k_value;
  p.field = CycloField::make(4 * k_value);
  return p;
}

OperatorExpr build_R(const TTWParams& P) {
  return OperatorExpr::group(P.field, GroupElement::rotation(1, P.two_k()));
}

OperatorExpr build_I(const TTWParams& P) {
  return OperatorExpr::group(P.field, GroupElement::reflection());
}

OperatorExpr build_exchange_block(const TTWParams& P) {
  const auto& f = P.field;
  Coefficient a = Coefficient::var_a(f);
  Coefficient b = Coefficient::var_b(f);
  OperatorExpr sum = OperatorExpr::zero(f);
  for (int i = 0; i < P.k; ++i) {
    sum += OperatorExpr::term(a, 0, 0, GroupElement{(2 * i + 1) % P.two_k(), 1});
    sum += OperatorExpr::term(b, 0, 0, GroupElement{(2 * i) % P.two_k(), 1});
  }
  return sum;
}

OperatorExpr build_Dr(const TTWParams& P) {
  const auto& f = P.field;
  OperatorExpr d = OperatorExpr::deriv_r(f);
  d -= build_exchange_block(P).scale(Coefficient::var_r(f, -1));
  return d;
}

OperatorExpr build_Dphi(const TTWParams& P) {
  const auto& f = P.field;
  Coefficient a = Coefficient::var_a(f);
  Coefficient b = Coefficient::var_b(f);
  OperatorExpr d = OperatorExpr::deriv_phi(f);
  for (int i = 0; i < P.k; ++i) {
    Coefficient tan_i = Coefficient::trig_fn(f, TrigKind::tan, i);
    Coefficient cot_i = Coefficient::trig_fn(f, TrigKind::cot, i);
    d += OperatorExpr::term(a * tan_i, 0, 0, GroupElement{(P.k + 2 * i) % P.two_k(), 1});
    d -= OperatorExpr::term(b * cot_i, 0, 0, GroupElement{(2 * i) % P.two_k(), 1});
  }
  return d;
}

namespace {

// The group polynomial k (a^2 + b^2 + 2ab R) sum_i R^(2i).
OperatorExpr coupling_square_block(const TTWParams& P) {
  const auto& f = P.field;
  Coefficient a2b2 = Coefficient::var_a(f, 2) + Coefficient::var_b(f, 2);
  Coefficient two_ab = Coefficient::var_a(f) * Coefficient::var_b(f) * Rational(2);
  OperatorExpr sum = OperatorExpr::zero(f);
  for (int i = 0; i < P.k; ++i) {
    sum += OperatorExpr::term(a2b2, 0, 0, GroupElement{(2 * i) % P.two_k(), 0});
    sum += OperatorExpr::term(two_ab, 0, 0, GroupElement{(2 * i + 1) % P.two_k(), 0});
  }
  return sum.scale(Rational(P.k));
}

// D_phi^2 written out over the group algebra:
//   d_phi^2 - sum_i sec^2(phi + i pi/k) a (a - R^(k+2i) I)
//           - sum_i csc^2(phi + i pi/k) b (b - R^(2i) I)
//           + k (a^2 + b^2 + 2ab R) sum_i R^(2i).
OperatorExpr dphi_squared_expansion(const TTWParams& P) {
  const auto& f = P.field;
  Coefficient a = Coefficient::var_a(f);
  Coefficient b = Coefficient::var_b(f);
  OperatorExpr out = OperatorExpr::deriv_phi(f, 2);
  for (int i = 0; i < P.k; ++i) {
    Coefficient sec2_i = Coefficient::trig_fn(f, TrigKind::sec2, i);
    Coefficient csc2_i = Coefficient::trig_fn(f, TrigKind::csc2, i);
    out -= OperatorExpr::from_coefficient(sec2_i * a * a);
    out += OperatorExpr::term(sec2_i * a, 0, 0, GroupElement{(P.k + 2 * i) % P.two_k(), 1});
    out -= OperatorExpr::from_coefficient(csc2_i * b * b);
    out += OperatorExpr::term(csc2_i * b, 0, 0, GroupElement{(2 * i) % P.two_k(), 1});
  }
  out += coupling_square_block(P);
  return out;
}

OperatorExpr extended_H_from_definition(const TTWParams& P) {
  const auto& f = P.field;
  OperatorExpr dr = build_Dr(P);
  OperatorExpr dphi = build_Dphi(P);
  Coefficient rinv = Coefficient::var_r(f, -1);
  OperatorExpr bracket = OperatorExpr::identity(f) + build_exchange_block(P).scale(Rational(2));
  OperatorExpr h = -(dr * dr);
  h -= bracket.scale(rinv) * dr;
  h -= (dphi * dphi).scale(Coefficient::var_r(f, -2));
  h += OperatorExpr::from_coefficient(Coefficient::omega(f, 2) * Coefficient::var_r(f, 2));
  return h;
}

OperatorExpr extended_H_rewritten(const TTWParams& P) {
  const auto& f = P.field;
  OperatorExpr dphi = build_Dphi(P);
  Coefficient rinv2 = Coefficient::var_r(f, -2);
  OperatorExpr h = -OperatorExpr::deriv_r(f, 2);
  h -= OperatorExpr::deriv_r(f).scale(Coefficient::var_r(f, -1));
  h -= ((dphi * dphi) - coupling_square_block(P)).scale(rinv2);
  h += OperatorExpr::from_coefficient(Coefficient::omega(f, 2) * Coefficient::var_r(f, 2));
  return h;
}

}  // namespace

OperatorExpr build_extended_H(const TTWParams& P) {
  OperatorExpr h = extended_H_from_definition(P);
  if (!h.equals(extended_H_rewritten(P)))
    throw std::logic_error("extended Hamiltonian rewrite mismatch; rewriter is broken");
  return h;
}

OperatorExpr build_extended_X(const TTWParams& P) {
  OperatorExpr dphi = build_Dphi(P);
  return -(dphi * dphi);
}

OperatorExpr build_projected_H_target(const TTWParams& P) {
  const auto& f = P.field;
  OperatorExpr h = build_plain_h(P);
  Coefficient alpha = Coefficient::var_a(f, 2) - Coefficient::var_a(f);
  Coefficient beta = Coefficient::var_b(f, 2) - Coefficient::var_b(f);
  Coefficient pot = (alpha * Coefficient::sec2_k_phi(f) + beta * Coefficient::csc2_k_phi(f)) *
                    Rational(static_cast<long>(P.k) * P.k);
  h += OperatorExpr::from_coefficient(pot * Coefficient::var_r(f, -2));
  return h;
}

OperatorExpr build_projected_X_target(const TTWParams& P) {
  const auto& f = P.field;
  Coefficient alpha = Coefficient::var_a(f, 2) - Coefficient::var_a(f);
  Coefficient beta = Coefficient::var_b(f, 2) - Coefficient::var_b(f);
  Coefficient pot = (alpha * Coefficient::sec2_k_phi(f) + beta * Coefficient::csc2_k_phi(f)) *
                    Rational(static_cast<long>(P.k) * P.k);
  return -OperatorExpr::deriv_phi(f, 2) + OperatorExpr::from_coefficient(pot);
}

OperatorExpr build_plain_h(const TTWParams& P) {
  const auto& f = P.field;
  OperatorExpr h = -OperatorExpr::deriv_r(f, 2);
  h -= OperatorExpr::deriv_r(f).scale(Coefficient::var_r(f, -1));
  h -= OperatorExpr::deriv_phi(f, 2).scale(Coefficient::var_r(f, -2));
  h += OperatorExpr::from_coefficient(Coefficient::omega(f, 2) * Coefficient::var_r(f, 2));
  return h;
}

namespace {

void sort_reports(std::vector<VerificationReport>& v) {
  std::sort(v.begin(), v.end(),
            [](const VerificationReport& x, const VerificationReport& y) { return x.name < y.name; });
}

}  // namespace

std::vector<VerificationReport> check_dihedral_calculus(const TTWParams& P) {
  const auto& f = P.field;
  const int k = P.k;
  std::vector<VerificationReport> out;

  OperatorExpr R = build_R(P);
  OperatorExpr I = build_I(P);
  OperatorExpr id = OperatorExpr::identity(f);
  OperatorExpr dr = build_Dr(P);
  OperatorExpr dphi = build_Dphi(P);
  Coefficient rinv = Coefficient::var_r(f, -1);

  out.push_back(check_equal("dihedral-R-order", k, R.pow(P.two_k()), id));
  out.push_back(check_equal("dihedral-I-involution", k, I * I, id));
  out.push_back(check_equal("dihedral-braid", k, I * R, R.pow(P.two_k() - 1) * I));
  out.push_back(check_equal("dihedral-R-adjoint", k, R.adjoint(), R.pow(P.two_k() - 1)));
  out.push_back(check_equal("dihedral-I-adjoint", k, I.adjoint(), I));

  OperatorExpr dr_adj_target =
      -dr - (id + build_exchange_block(P).scale(Rational(2))).scale(rinv);
  out.push_back(check_equal("Dr-adjoint", k, dr.adjoint(), dr_adj_target));
  out.push_back(check_equal("Dphi-adjoint", k, dphi.adjoint(), -dphi));

  out.push_back(check_equal("R-Dr-exchange", k, R * dr, dr * R));
  out.push_back(check_equal("I-Dr-exchange", k, I * dr, dr * I));
  out.push_back(check_equal("R-Dphi-exchange", k, R * dphi, dphi * R));
  out.push_back(check_equal("I-Dphi-exchange", k, I * dphi, -(dphi * I)));

  out.push_back(check_equal("Dr-Dphi-commutator", k, commutator(dr, dphi),
                            build_exchange_block(P).scale(rinv * Rational(-2)) * dphi));

  OperatorExpr r_op = OperatorExpr::from_coefficient(Coefficient::var_r(f));
  out.push_back(check_equal("Dr-r-commutator", k, commutator(dr, r_op), id));
  out.push_back(check_zero("Dphi-r-commutator", k, commutator(dphi, r_op)));

  // Commutators with cos(phi), sin(phi): mixed trig products over half-shifted
  // angles, all exact in the cyclotomic scalars.
  OperatorExpr cos_op = OperatorExpr::from_coefficient(Coefficient::trig_fn(f, TrigKind::cos, 0));
  OperatorExpr sin_op = OperatorExpr::from_coefficient(Coefficient::trig_fn(f, TrigKind::sin, 0));
  Coefficient a = Coefficient::var_a(f);
  Coefficient b = Coefficient::var_b(f);

  OperatorExpr dr_cos = OperatorExpr::zero(f);
  OperatorExpr dr_sin = OperatorExpr::zero(f);
  OperatorExpr dphi_cos = -sin_op;
  OperatorExpr dphi_sin = cos_op;
  for (int i = 0; i < k; ++i) {
    Coefficient cos_i = Coefficient::trig_fn(f, TrigKind::cos, i);
    Coefficient sin_i = Coefficient::trig_fn(f, TrigKind::sin, i);
    CyclotomicNumber c_i = CyclotomicNumber::cos_angle(f, i);
    CyclotomicNumber s_i = CyclotomicNumber::sin_angle(f, i);
    GroupElement ga{(k + 2 * i) % P.two_k(), 1};
    GroupElement gb{(2 * i) % P.two_k(), 1};
    dr_cos += OperatorExpr::term(a * (cos_i * c_i) * rinv * Rational(2), 0, 0, ga);
    dr_cos += OperatorExpr::term(b * (sin_i * s_i) * rinv * Rational(2), 0, 0, gb);
    dr_sin += OperatorExpr::term(a * (cos_i * s_i) * rinv * Rational(-2), 0, 0, ga);
    dr_sin += OperatorExpr::term(b * (sin_i * c_i) * rinv * Rational(2), 0, 0, gb);
    dphi_cos += OperatorExpr::term(a * (sin_i * c_i) * Rational(-2), 0, 0, ga);
    dphi_cos += OperatorExpr::term(b * (cos_i * s_i) * Rational(2), 0, 0, gb);
    dphi_sin += OperatorExpr::term(a * (sin_i * s_i) * Rational(2), 0, 0, ga);
    dphi_sin += OperatorExpr::term(b * (cos_i * c_i) * Rational(2), 0, 0, gb);
  }
  out.push_back(check_equal("Dr-cos-commutator", k, commutator(dr, cos_op), dr_cos));
  out.push_back(check_equal("Dr-sin-commutator", k, commutator(dr, sin_op), dr_sin));
  out.push_back(check_equal("Dphi-cos-commutator", k, commutator(dphi, cos_op), dphi_cos));
  out.push_back(check_equal("Dphi-sin-commutator", k, commutator(dphi, sin_op), dphi_sin));

  sort_reports(out);
  return out;
}

std::vector<VerificationReport> check_projection(const TTWParams& P) {
  const auto& f = P.field;
  const int k = P.k;
  std::vector<VerificationReport> out;

  OperatorExpr dphi = build_Dphi(P);
  OperatorExpr hext = extended_H_from_definition(P);
  OperatorExpr xext = -(dphi * dphi);

  out.push_back(check_equal("extended-H-rewrite", k, hext, extended_H_rewritten(P)));
  out.push_back(check_equal("Dphi-squared-expansion", k, dphi * dphi, dphi_squared_expansion(P)));

  out.push_back(
      check_equal("project-extended-H", k, hext.project_identity(), build_projected_H_target(P)));
  Coefficient shift = (Coefficient::var_a(f) + Coefficient::var_b(f));
  OperatorExpr x_target = build_projected_X_target(P) -
                          OperatorExpr::from_coefficient(shift * shift *
                                                         Rational(static_cast<long>(k) * k));
  out.push_back(check_equal("project-extended-X", k, xext.project_identity(), x_target));

  out.push_back(check_zero("X-H-commute", k, commutator(xext, hext)));

  // Invariance under every one of the 4k group elements.
  std::size_t residual = 0;
  for (int rot = 0; rot < P.two_k(); ++rot) {
    for (int refl = 0; refl < 2; ++refl) {
      GroupElement g{rot, refl};
      residual += (hext.conjugate_by_group(g) - hext).term_count();
    }
  }
  out.push_back(check_condition("H-dihedral-invariance", k, residual == 0,
                                "sum of residual terms over all group conjugations"));
  residual = 0;
  for (int rot = 0; rot < P.two_k(); ++rot) {
    for (int refl = 0; refl < 2; ++refl) {
      GroupElement g{rot, refl};
      residual += (xext.conjugate_by_group(g) - xext).term_count();
    }
  }
  out.push_back(check_condition("X-dihedral-invariance", k, residual == 0,
                                "sum of residual terms over all group conjugations"));

  sort_reports(out);
  return out;
}

}  // namespace ttw
