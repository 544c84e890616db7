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

#include <vector>

#include "ttw/operator_expr.hpp"
#include "ttw/params.hpp"
#include "ttw/report.hpp"

namespace ttw {

// Builders for the dihedral realization and the differential-difference
// operators D_r, D_phi, together with the golden identities they satisfy.
//
//   D_r   = d_r - (1/r) (a R + b) (sum_i R^(2i)) I
//   D_phi = d_phi + a sum_i tan(phi + i pi/k) R^(k+2i) I
//                 - b sum_i cot(phi + i pi/k) R^(2i)   I
//
// with all sums over i = 0..k-1.

OperatorExpr build_R(const TTWParams& P);
OperatorExpr build_I(const TTWParams& P);
OperatorExpr build_Dr(const TTWParams& P);
OperatorExpr build_Dphi(const TTWParams& P);

/// The group sum (a R + b) (sum_i R^(2i)) I appearing in D_r, the radial
/// adjoint rule and the extended Hamiltonian.
OperatorExpr build_exchange_block(const TTWParams& P);

/// The dihedral-invariant Hamiltonian
///   Hext = -D_r^2 - (1/r)[1 + 2 (aR + b)(sum R^(2i)) I] D_r
///          - (1/r^2) D_phi^2 + w^2 r^2.
/// Construction re-derives the equivalent d_r-form and throws on mismatch.
OperatorExpr build_extended_H(const TTWParams& P);

/// Xext = -D_phi^2, the invariant behind the angular separation constant.
OperatorExpr build_extended_X(const TTWParams& P);

/// The projected Hamiltonian on the identity representation:
///   H_k = -d_r^2 - (1/r) d_r - (1/r^2) d_phi^2 + w^2 r^2
///         + (k^2/r^2) (alpha sec^2(k phi) + beta csc^2(k phi)),
/// with alpha = a(a-1), beta = b(b-1).
OperatorExpr build_projected_H_target(const TTWParams& P);

/// The angular integral X_k = -d_phi^2 + k^2 (alpha sec^2 + beta csc^2).
OperatorExpr build_projected_X_target(const TTWParams& P);

/// The plain polar oscillator h = -d_r^2 - (1/r) d_r - (1/r^2) d_phi^2 + w^2 r^2.
OperatorExpr build_plain_h(const TTWParams& P);

/// Dihedral relations, Hermiticity and exchange rules, and the commutators
/// of D_r, D_phi with r, cos(phi), sin(phi).  Reports sorted by name.
std::vector<VerificationReport> check_dihedral_calculus(const TTWParams& P);

/// Extended-Hamiltonian rewrites, identity-representation projections,
/// [Xext, Hext] = 0 and full dihedral invariance.  Reports sorted by name.
std::vector<VerificationReport> check_projection(const TTWParams& P);

}  // namespace ttw
