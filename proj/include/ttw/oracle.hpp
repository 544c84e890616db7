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

#include <complex>
#include <random>

#include "ttw/boson.hpp"

namespace ttw {

/// Laurent-monomial test function psi(r, phi) = r^m exp(i n phi).  It stays
/// inside the coefficient ring, so the symbolic application is exact.
struct TestFunction {
  int m = 0;
  int n = 0;
};

/// A concrete evaluation point with numeric couplings, plus the pole margin
/// every shifted angle must keep from the grid of pole angles.
struct SamplePoint {
  double r = 1.0;
  double phi = 0.3;
  double a = 0.5;
  double b = 0.5;
  double w = 1.0;
  double margin = 0.05;
};

/// The operator families with a raw-formula numeric counterpart.
enum class RawOp { zero, Dr, Dphi, A, Adag, B, Bdag, H, Hext, Xext };

const char* raw_op_name(RawOp op);

/// Exact symbolic application of a canonical operator to r^m u^n.
Coefficient apply_to_monomial(const OperatorExpr& x, TestFunction psi);

/// Applies the raw defining formula of the operator to psi at the point:
/// analytic derivatives of the monomial, explicit tan/cot factors, and
/// reflection/rotation of arguments.  index selects A_i/B_i/H_i and is
/// normalized like the builders.  No canonical-form machinery is involved.
std::complex<double> numeric_apply(const TTWParams& P, RawOp op, long index, TestFunction psi,
                                   const SamplePoint& pt);

/// Draws a point whose angle keeps at least `margin` from every pole angle.
SamplePoint random_safe_point(const TTWParams& P, std::mt19937_64& rng, double margin = 0.05);

/// Compares the symbolic path (apply_to_monomial + eval) against the raw
/// numeric path over n_points seeded random safe points and n_functions
/// monomials; passes at max relative deviation <= 1e-8.
VerificationReport crosscheck(const TTWParams& P, RawOp op, long index, int n_points,
                              int n_functions, std::uint64_t seed);

/// The full oracle sweep used by the verification driver.
std::vector<VerificationReport> check_oracle(const TTWParams& P, int n_points, int n_functions,
                                             std::uint64_t seed);

}  // namespace ttw
