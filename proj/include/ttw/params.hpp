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

#include "ttw/cyclotomic.hpp"

namespace ttw {

/// Family parameters.  k selects the dihedral group D_2k and the scalar
/// field Q(zeta_4k); the couplings a, b and the frequency w stay formal
/// indeterminates throughout verification, so every identity holds for all
/// parameter values at once.
struct TTWParams {
  int k = 0;
  CycloFieldPtr field;

  /// Throws std::invalid_argument unless k is odd and >= 3.  k = 1 is
  /// rejected as well: the index-extended boson operators and everything
  /// downstream of them need k >= 3.
  static TTWParams make(int k_value);

  int two_k() const { return 2 * k; }
  int order() const { return 4 * k; }
};

}  // namespace ttw
