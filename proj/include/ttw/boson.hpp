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

#include "ttw/dunkl.hpp"

namespace ttw {

// The k dependent pairs of deformed boson operators
//   A_i   = (1/sqrt(2w)) [ cos(phi + i pi/k) (w r + D_r) - (1/r) sin(phi + i pi/k) D_phi ],
//   A_i^+ = (1/sqrt(2w)) [ cos(phi + i pi/k) (w r - D_r) + (1/r) sin(phi + i pi/k) D_phi ],
// the companion B_i built from the shifted sine profile, the oscillator
// Hamiltonians H_i = (1/2){A_i^+, A_i}, and the order-2k invariant
//   Y = (2w)^k sum over all k! permutations p of H_p(0) H_p(1) ... H_p(k-1).
//
// Indices extend to all integers through A_(lambda k + i) = (-1)^lambda A_i,
// and every builder applies that normalization.

OperatorExpr build_A(const TTWParams& P, long i, bool dagger = false);
/// Direct form of B_i (the base pair with phi -> phi + i pi/k).
OperatorExpr build_B(const TTWParams& P, long i, bool dagger = false);
/// B_i resolved over the A basis: (2/k) sum_j A_j sin((i-j) pi/k).
OperatorExpr build_B_from_A(const TTWParams& P, long i, bool dagger = false);
OperatorExpr build_H(const TTWParams& P, long i);

/// Closed form of 2w H_i over (r, phi, D_r, D_phi) and the group algebra.
OperatorExpr build_H_explicit_scaled(const TTWParams& P, long i);

/// Closed form of [A_i, A_j^+]:
///   cos((j-i)pi/k) + 2a sum_l cos((l-i)pi/k) cos((l-j)pi/k) R^(k+2l) I
///                  + 2b sum_l sin((l-i)pi/k) sin((l-j)pi/k) R^(2l) I.
OperatorExpr boson_commutator_rhs(const TTWParams& P, long i, long j);

/// Closed form of [H_0, H_i] over the A basis and the group algebra.
OperatorExpr oscillator_commutator_rhs(const TTWParams& P, long i);

/// The symmetrized product invariant.  Permutations are enumerated by a
/// depth-first walk that shares partial left products between permutations
/// with a common prefix; reverse_enumeration walks the tree in the opposite
/// order and must produce the identical canonical form.
/// Throws BudgetExceededError when the budget is exhausted.
OperatorExpr build_Y(const TTWParams& P, const Budget* budget = nullptr,
                     bool reverse_enumeration = false);

/// Adjoint pairing, index extension, group actions and the B-from-A
/// resolution.
std::vector<VerificationReport> check_boson_consistency(const TTWParams& P);

/// The linear dependencies among the A_i.
std::vector<VerificationReport> check_linear_relations(const TTWParams& P);

/// [A_i, A_j] = [A_i^+, A_j^+] = 0 and the closed form of [A_i, A_j^+]
/// for every index pair.
std::vector<VerificationReport> check_boson_commutators(const TTWParams& P);

/// Group actions on H_i, the explicit form of 2w H_i, self-adjointness and
/// the sum rule 2w sum_i H_i = (k/2) Hext.
std::vector<VerificationReport> check_H_structure(const TTWParams& P);

/// [H_0, H_i] against its closed form and [H_i, Hext] = 0.
std::vector<VerificationReport> check_H_commutators(const TTWParams& P);

/// Builds Y and verifies: dihedral invariance, self-adjointness,
/// [Hext, Y] = 0, projected order 2k, the leading coefficient of
/// d_phi d_r^(2k) in the projected [Xext, Y] (the functional-independence
/// certificate), and projection compatibility of the commutator.
/// Appends reports as they complete so a budget exception leaves the
/// finished ones in place; if y_out is nonnull the built Y is stored there.
void check_superintegrability(const TTWParams& P, const Budget* budget,
                              std::vector<VerificationReport>& out,
                              OperatorExpr* y_out = nullptr);

/// The a = b = 0 reduction: all builders collapse onto the plain polar
/// oscillator, and the projected Y reduction commutes with it.  Reuses a
/// prebuilt Y when provided (it is rebuilt only for k = 3 otherwise).
std::vector<VerificationReport> check_reduction(const TTWParams& P,
                                                const OperatorExpr* y = nullptr);

}  // namespace ttw
