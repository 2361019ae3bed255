// Copyright 2026 The bellmono authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <vector>

#include "bellmono/common.hpp"

namespace bellmono {

/// Device-independent guessing-probability bound from observed Bell values.
/// The closed forms can exceed 1 for weak observations; `capped` clamps to a
/// probability. `feasible` is false when the radicand is negative beyond
/// floating slack (values outside the quantum set).
struct PguessBound {
  double raw = 0;
  double capped = 0;
  bool feasible = true;
};

namespace detail {

inline PguessBound pguess_from_radicand(double radicand) {
  if (radicand < -1e-9)
    fail(errc::infeasible_observation, "guessing bound: observation outside the quantum set");
  if (radicand < 0) radicand = 0;
  PguessBound out;
  out.raw = 0.5 * (1.0 + std::sqrt(radicand));
  out.capped = std::min(1.0, std::max(0.5, out.raw));
  return out;
}

}  // namespace detail

/// Bound from a three-party Mermin value together with a CHSH value on the
/// first two parties: 1/2 [1 + sqrt(2 - M^2/8 - C^2/8)].
inline PguessBound pguess_hybrid(double mermin, double chsh) {
  return detail::pguess_from_radicand(2.0 - mermin * mermin / 8.0 - chsh * chsh / 8.0);
}

/// n-party chain of Mermin values (paper-convention scaling): values[j]
/// holds the j-party Mermin value for j = 2..n; the bound is
/// 1/2 [1 + sqrt(2^{n-2} - M_n^2/2^n - sum_{j=2}^{n-1} M_j^2/2^{j+1})].
inline PguessBound pguess_chain_n(const std::vector<double>& values_by_parties, int n) {
  require(n >= 3, errc::n_out_of_range, "pguess_chain_n: n must be >= 3");
  require(static_cast<int>(values_by_parties.size()) == n - 1, errc::size_mismatch,
          "pguess_chain_n: need values for j = 2..n");
  double radicand = std::ldexp(1.0, n - 2);
  double mn = values_by_parties.back();
  radicand -= mn * mn / std::ldexp(1.0, n);
  for (int j = 2; j <= n - 1; ++j) {
    double mj = values_by_parties[j - 2];
    radicand -= mj * mj / std::ldexp(1.0, j + 1);
  }
  return detail::pguess_from_radicand(radicand);
}

}  // namespace bellmono
