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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bellmono/common.hpp"
#include "bellmono/linalg.hpp"

namespace bellmono {

/// A full-correlation Bell expression: a real coefficient per input tuple,
/// the coefficient of E(x_1..x_n). Inputs are 0-based here; party 0 is the
/// fastest-varying index of the flat tensor.
struct CorrelationExpression {
  int n_parties = 0;
  std::vector<int> inputs;     // inputs per party
  std::vector<double> coeffs;  // flat tensor, size prod(inputs)
  std::string name;

  CorrelationExpression() = default;
  CorrelationExpression(std::vector<int> inputs_per_party, std::string nm)
      : n_parties(static_cast<int>(inputs_per_party.size())),
        inputs(std::move(inputs_per_party)),
        name(std::move(nm)) {
    std::size_t total = 1;
    for (int m : inputs) {
      require(m >= 1, errc::bad_input, "inputs per party must be >= 1");
      total *= static_cast<std::size_t>(m);
    }
    coeffs.assign(total, 0.0);
  }

  std::size_t flat_index(const std::vector<int>& x) const {
    std::size_t idx = 0, stride = 1;
    for (int i = 0; i < n_parties; ++i) {
      idx += stride * static_cast<std::size_t>(x[i]);
      stride *= static_cast<std::size_t>(inputs[i]);
    }
    return idx;
  }

  double& at(const std::vector<int>& x) { return coeffs[flat_index(x)]; }
  double at(const std::vector<int>& x) const { return coeffs[flat_index(x)]; }

  std::size_t tuple_count() const { return coeffs.size(); }

  void unflatten(std::size_t idx, std::vector<int>& x) const {
    x.resize(n_parties);
    for (int i = 0; i < n_parties; ++i) {
      x[i] = static_cast<int>(idx % static_cast<std::size_t>(inputs[i]));
      idx /= static_cast<std::size_t>(inputs[i]);
    }
  }

  double algebraic_max() const {
    double s = 0;
    for (double c : coeffs) s += std::abs(c);
    return s;
  }
};

struct BoundsRecord {
  double classical = 0;
  std::optional<double> bilocal;
  std::optional<double> quantum_upper;
  std::optional<double> quantum_attained;

  bool consistent(double tol = 1e-9) const {
    if (bilocal && *bilocal + tol < classical) return false;
    if (quantum_upper && quantum_attained && *quantum_attained > *quantum_upper + tol)
      return false;
    return true;
  }
};

inline CorrelationExpression chsh() {
  CorrelationExpression e({2, 2}, "chsh");
  e.at({0, 0}) = 1;
  e.at({1, 0}) = 1;
  e.at({0, 1}) = 1;
  e.at({1, 1}) = -1;
  return e;
}

inline CorrelationExpression mermin3() {
  CorrelationExpression e({2, 2, 2}, "mermin3");
  e.at({0, 0, 0}) = -1;
  e.at({0, 1, 1}) = 1;
  e.at({1, 0, 1}) = 1;
  e.at({1, 1, 0}) = 1;
  return e;
}

/// Facet of the full-correlation polytope from a sign table g over
/// s in {+1,-1}^n: f(x) = 2^{-n} sum_s g(s) prod_i s_i^{x_i}. The table is
/// indexed lexicographically with s_i = +1 sorting first (bit 0 of the index
/// selects party 0's sign, set bit meaning -1). Local bound is 1.
inline CorrelationExpression ww_zb_facet(int n_parties, const std::vector<int>& sign_table) {
  require(n_parties >= 1 && n_parties <= 20, errc::bad_input, "ww_zb_facet: bad party count");
  require(static_cast<int>(sign_table.size()) == (1 << n_parties), errc::incomplete_sign_table,
          "ww_zb_facet: sign table must have 2^n entries");
  for (int s : sign_table)
    require(s == 1 || s == -1, errc::incomplete_sign_table, "ww_zb_facet: signs must be +-1");
  CorrelationExpression e(std::vector<int>(n_parties, 2), "ww_zb_facet");
  const double scale = std::ldexp(1.0, -n_parties);
  std::vector<int> x;
  for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
    e.unflatten(idx, x);
    double f = 0;
    for (int sbits = 0; sbits < (1 << n_parties); ++sbits) {
      int neg = 0;
      for (int i = 0; i < n_parties; ++i)
        if (((sbits >> i) & 1) && x[i] == 1) neg ^= 1;
      f += (neg ? -1.0 : 1.0) * sign_table[sbits];
    }
    e.coeffs[idx] = scale * f;
  }
  return e;
}

/// Swaps the two inputs of every party (the tilde operation). Requires
/// two inputs per party.
inline CorrelationExpression input_swapped(const CorrelationExpression& e) {
  for (int m : e.inputs)
    require(m == 2, errc::shape_mismatch, "input_swapped requires binary inputs");
  CorrelationExpression r(e.inputs, e.name + "~");
  std::vector<int> x;
  for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
    e.unflatten(idx, x);
    for (auto& xi : x) xi ^= 1;
    r.at(x) = e.coeffs[idx];
  }
  return r;
}

/// Mermin-Klyshko polynomial M_n with the 1/2-weight recursion. All
/// coefficients are dyadic rationals and therefore exact in doubles.
inline CorrelationExpression mermin_klyshko(int n) {
  require(n >= 1 && n <= 6, errc::n_out_of_range, "mermin_klyshko: n must be in 1..6");
  CorrelationExpression m({2}, "mk1");
  m.at({0}) = 1;
  for (int k = 2; k <= n; ++k) {
    CorrelationExpression tilde = input_swapped(m);
    CorrelationExpression next(std::vector<int>(k, 2), "mk" + std::to_string(k));
    std::vector<int> x;
    for (std::size_t idx = 0; idx < m.tuple_count(); ++idx) {
      m.unflatten(idx, x);
      std::vector<int> x0 = x, x1 = x;
      x0.push_back(0);
      x1.push_back(1);
      // x_k = 0: (M + M~)/2 ; x_k = 1: (M - M~)/2
      next.at(x0) = 0.5 * (m.coeffs[idx] + tilde.coeffs[idx]);
      next.at(x1) = 0.5 * (m.coeffs[idx] - tilde.coeffs[idx]);
    }
    m = std::move(next);
  }
  m.name = "mermin_klyshko(" + std::to_string(n) + ")";
  return m;
}

inline CorrelationExpression svetlichny(int n) {
  require(n >= 2 && n <= 6, errc::n_out_of_range, "svetlichny: n must be in 2..6");
  CorrelationExpression m = mermin_klyshko(n);
  if (n % 2 == 0) {
    m.name = "svetlichny(" + std::to_string(n) + ")";
    return m;
  }
  CorrelationExpression t = input_swapped(m);
  CorrelationExpression s(m.inputs, "svetlichny(" + std::to_string(n) + ")");
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] = 0.5 * (m.coeffs[i] + t.coeffs[i]);
  return s;
}

/// Toeplitz diagonal rule of the two-party chain inequality:
/// +1 on -m/2 < l <= m/2, -1 elsewhere (l = y - x over -m+1..m-1).
/// This is the unique diagonal rule consistent with the inequality's
/// decomposition into m^2/4 CHSH blocks with antiperiodic index wrap,
/// and it yields the classical bound m^2/2.
inline int chain_t(int m, int l) { return (l > -m / 2 && l <= m / 2) ? 1 : -1; }

inline CorrelationExpression chain(int m) {
  require(m % 2 == 0, errc::odd_m, "chain: m must be even");
  require(m >= 2, errc::bad_input, "chain: m must be >= 2");
  CorrelationExpression e({m, m}, "chain(" + std::to_string(m) + ")");
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) e.at({x, y}) = chain_t(m, y - x);
  return e;
}

/// The m^2/4 embedded CHSH expressions whose coefficientwise sum equals
/// chain(m) exactly. Alice indices wrap antiperiodically (index - m with a
/// sign flip).
inline std::vector<CorrelationExpression> decompose_chain_to_chsh(int m) {
  require(m % 2 == 0, errc::odd_m, "decompose_chain_to_chsh: m must be even");
  std::vector<CorrelationExpression> blocks;
  for (int j = 1; j <= m / 2; ++j)
    for (int l = 1; l <= m / 2; ++l) {
      CorrelationExpression b({m, m},
                              "chain_block(j=" + std::to_string(j) + ",l=" + std::to_string(l) + ")");
      int u1 = j + l - 1;          // 1-based, never exceeds m - 1
      int u2 = j + m / 2 + l - 1;  // may wrap
      double s2 = 1.0;
      if (u2 > m) {
        u2 -= m;
        s2 = -1.0;
      }
      int bj = j, bj2 = j + m / 2;
      b.at({u1 - 1, bj - 1}) += 1;
      b.at({u1 - 1, bj2 - 1}) += 1;
      b.at({u2 - 1, bj2 - 1}) += s2;
      b.at({u2 - 1, bj - 1}) -= s2;
      blocks.push_back(std::move(b));
    }
  return blocks;
}

/// Multi-input Svetlichny-type tensor with +-1 coefficients, built by the
/// base row over the last input plus a shift/negate recursion that lowers
/// the leftmost non-initial index.
inline CorrelationExpression gen_svetlichny(int n, int m) {
  require(n >= 2, errc::n_out_of_range, "gen_svetlichny: n must be >= 2");
  require(m % 2 == 0, errc::odd_m, "gen_svetlichny: m must be even");
  double total = std::pow(static_cast<double>(m), n);
  require(total <= 1e6, errc::size_guard, "gen_svetlichny: m^n exceeds the size guard");

  CorrelationExpression e(std::vector<int>(n, m),
                          "gen_svetlichny(" + std::to_string(n) + "," + std::to_string(m) + ")");
  // Iterate with the first n-1 indices as the outer mixed-radix counter in
  // increasing order; each entry reduces to one computed earlier.
  std::vector<int> x;
  for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
    e.unflatten(idx, x);
    int k = -1;
    for (int i = 0; i < n - 1; ++i)
      if (x[i] > 0) {
        k = i;
        break;
      }
    if (k < 0) {
      // base row: -1 iff (1-based) x_n <= m/2 + 1
      e.coeffs[idx] = (x[n - 1] + 1 <= m / 2 + 1) ? -1.0 : 1.0;
      continue;
    }
    std::vector<int> parent = x;
    parent[k] -= 1;
    double sign = 1.0;
    if (parent[k + 1] == 0) {
      parent[k + 1] = m - 1;
      sign = -1.0;
    } else {
      parent[k + 1] -= 1;
    }
    e.coeffs[idx] = sign * e.at(parent);
  }
  return e;
}

/// Exact maximum over deterministic +-1 assignments a_i(x_i).
inline double local_bound(const CorrelationExpression& e) {
  int total_inputs = std::accumulate(e.inputs.begin(), e.inputs.end(), 0);
  require(total_inputs <= 24, errc::too_large_for_enumeration,
          "local_bound: more than 2^24 deterministic strategies");
  std::vector<int> offsets(e.n_parties, 0);
  for (int i = 1; i < e.n_parties; ++i) offsets[i] = offsets[i - 1] + e.inputs[i - 1];

  // Precompute tuples once.
  std::vector<std::vector<int>> tuples(e.tuple_count());
  for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) e.unflatten(idx, tuples[idx]);

  double best = -std::numeric_limits<double>::infinity();
  const std::uint32_t limit = 1u << total_inputs;
  for (std::uint32_t assign = 0; assign < limit; ++assign) {
    double v = 0;
    for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
      double c = e.coeffs[idx];
      if (c == 0.0) continue;
      int sign = 0;
      for (int i = 0; i < e.n_parties; ++i)
        sign ^= (assign >> (offsets[i] + tuples[idx][i])) & 1;
      v += sign ? -c : c;
    }
    best = std::max(best, v);
  }
  return best;
}

/// Exact maximum over two-block strategies where the output product of each
/// block is an arbitrary deterministic function of the block's joint input.
inline double bilocal_bound(const CorrelationExpression& e, const std::vector<int>& block1,
                            const std::vector<int>& block2) {
  std::vector<int> seen(e.n_parties, 0);
  for (int p : block1) seen.at(p) += 1;
  for (int p : block2) seen.at(p) += 1;
  for (int c : seen)
    require(c == 1, errc::bad_input, "bilocal_bound: blocks must partition the parties");
  require(!block1.empty() && !block2.empty(), errc::bad_input,
          "bilocal_bound: blocks must be nonempty");

  // Enumerate over the smaller block; the other one responds optimally.
  std::vector<int> enum_block = block1, respond_block = block2;
  std::size_t m1 = 1;
  for (int p : enum_block) m1 *= static_cast<std::size_t>(e.inputs[p]);
  std::size_t m2 = 1;
  for (int p : respond_block) m2 *= static_cast<std::size_t>(e.inputs[p]);
  if (m2 < m1) {
    std::swap(enum_block, respond_block);
    std::swap(m1, m2);
  }
  require(m1 <= 24, errc::too_large_for_enumeration,
          "bilocal_bound: block strategy space too large");

  // Map each global tuple to (enumerated block joint input, responding
  // block joint input).
  std::vector<std::size_t> j1(e.tuple_count()), j2(e.tuple_count());
  std::vector<int> x;
  for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
    e.unflatten(idx, x);
    std::size_t a = 0;
    for (int p : enum_block) a = a * static_cast<std::size_t>(e.inputs[p]) + x[p];
    std::size_t b = 0;
    for (int p : respond_block) b = b * static_cast<std::size_t>(e.inputs[p]) + x[p];
    j1[idx] = a;
    j2[idx] = b;
  }

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> inner(m2);
  for (std::uint64_t s = 0; s < (1ULL << m1); ++s) {
    std::fill(inner.begin(), inner.end(), 0.0);
    for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
      double c = e.coeffs[idx];
      if (c == 0.0) continue;
      inner[j2[idx]] += ((s >> j1[idx]) & 1) ? -c : c;
    }
    double v = 0;
    for (double w : inner) v += std::abs(w);  // responding block picks signs
    best = std::max(best, v);
  }
  return best;
}

inline double bilocal_bound_all_partitions(const CorrelationExpression& e) {
  require(e.n_parties >= 2, errc::bad_input, "need >= 2 parties");
  double best = -std::numeric_limits<double>::infinity();
  for (int mask = 1; mask < (1 << (e.n_parties - 1)); ++mask) {
    std::vector<int> b1, b2;
    for (int p = 0; p < e.n_parties; ++p)
      ((mask >> p) & 1 ? b1 : b2).push_back(p);
    best = std::max(best, bilocal_bound(e, b1, b2));
  }
  return best;
}

/// Spectral-norm upper bound on the quantum value:
/// sqrt(m_1 m_2) * sum over x_3..x_n of the largest singular value of the
/// party-1/party-2 coefficient slice.
inline double quantum_upper_bound_spectral(const CorrelationExpression& e) {
  require(e.n_parties >= 2, errc::bad_input, "quantum_upper_bound_spectral: need >= 2 parties");
  const int m1 = e.inputs[0], m2 = e.inputs[1];
  std::size_t rest = 1;
  for (int i = 2; i < e.n_parties; ++i) rest *= static_cast<std::size_t>(e.inputs[i]);
  double sum = 0;
  std::vector<double> slice(static_cast<std::size_t>(m1) * m2);
  std::vector<int> x(e.n_parties, 0);
  for (std::size_t r = 0; r < rest; ++r) {
    std::size_t t = r;
    for (int i = 2; i < e.n_parties; ++i) {
      x[i] = static_cast<int>(t % static_cast<std::size_t>(e.inputs[i]));
      t /= static_cast<std::size_t>(e.inputs[i]);
    }
    for (int a = 0; a < m1; ++a)
      for (int b = 0; b < m2; ++b) {
        x[0] = a;
        x[1] = b;
        slice[static_cast<std::size_t>(a) * m2 + b] = e.at(x);
      }
    sum += max_singular_value(slice, m1, m2);
  }
  return std::sqrt(static_cast<double>(m1) * m2) * sum;
}

/// Two-party XOR game over a simple graph: two rows per edge, one column per
/// vertex, entries +-1/(4e).
inline CorrelationExpression slofstra_game(int n_vertices,
                                           const std::vector<std::pair<int, int>>& edges) {
  require(!edges.empty(), errc::empty_graph, "slofstra_game: graph has no edges");
  const int e_count = static_cast<int>(edges.size());
  CorrelationExpression g({2 * e_count, n_vertices}, "slofstra_game");
  const double w = 1.0 / (4.0 * e_count);
  for (int k = 0; k < e_count; ++k) {
    auto [u, v] = edges[k];
    require(u >= 0 && v >= 0 && u < n_vertices && v < n_vertices && u != v,
            errc::index_out_of_range, "slofstra_game: bad edge");
    if (u > v) std::swap(u, v);
    g.at({2 * k, u}) = w;
    g.at({2 * k, v}) = -w;
    g.at({2 * k + 1, u}) = w;
    g.at({2 * k + 1, v}) = w;
  }
  return g;
}

/// View with unit local bound (divides by the brute-forced local bound).
inline CorrelationExpression normalized(const CorrelationExpression& e) {
  double b = local_bound(e);
  require(b > 0, errc::bad_normalization, "normalized: non-positive local bound");
  CorrelationExpression r = e;
  for (double& c : r.coeffs) c /= b;
  r.name = e.name + "/beta_c";
  return r;
}

inline bool same_coeffs(const CorrelationExpression& a, const CorrelationExpression& b,
                        double tol = 0.0) {
  if (a.inputs != b.inputs) return false;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    if (std::abs(a.coeffs[i] - b.coeffs[i]) > tol) return false;
  return true;
}

}  // namespace bellmono
