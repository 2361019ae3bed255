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
#include <numeric>
#include <string>
#include <vector>

#include "bellmono/common.hpp"
#include "bellmono/inequalities.hpp"

namespace bellmono {

struct Scenario {
  int n_parties = 0;
  std::vector<int> inputs;
  std::vector<int> outputs;

  Scenario() = default;
  Scenario(std::vector<int> m, std::vector<int> d)
      : n_parties(static_cast<int>(m.size())), inputs(std::move(m)), outputs(std::move(d)) {
    require(inputs.size() == outputs.size(), errc::size_mismatch,
            "scenario: inputs/outputs length mismatch");
    for (int mi : inputs) require(mi >= 1, errc::bad_input, "scenario: inputs must be >= 1");
    for (int di : outputs) require(di >= 2, errc::bad_input, "scenario: outputs must be >= 2");
  }

  static Scenario uniform(int n, int m, int d) {
    return Scenario(std::vector<int>(n, m), std::vector<int>(n, d));
  }

  std::size_t input_tuples() const {
    std::size_t t = 1;
    for (int m : inputs) t *= static_cast<std::size_t>(m);
    return t;
  }
  std::size_t outcome_tuples() const {
    std::size_t t = 1;
    for (int d : outputs) t *= static_cast<std::size_t>(d);
    return t;
  }
  std::size_t table_size() const { return input_tuples() * outcome_tuples(); }

  /// Collins-Gisin dimension prod_i (m_i (d_i - 1) + 1), including the
  /// constant coordinate.
  std::size_t cg_dimension() const {
    std::size_t t = 1;
    for (int i = 0; i < n_parties; ++i)
      t *= static_cast<std::size_t>(inputs[i] * (outputs[i] - 1) + 1);
    return t;
  }

  std::size_t flat_input(const std::vector<int>& x) const {
    std::size_t idx = 0;
    for (int i = n_parties - 1; i >= 0; --i) idx = idx * inputs[i] + x[i];
    return idx;
  }
  std::size_t flat_outcome(const std::vector<int>& o) const {
    std::size_t idx = 0;
    for (int i = n_parties - 1; i >= 0; --i) idx = idx * outputs[i] + o[i];
    return idx;
  }
  void unflatten_input(std::size_t idx, std::vector<int>& x) const {
    x.resize(n_parties);
    for (int i = 0; i < n_parties; ++i) {
      x[i] = static_cast<int>(idx % inputs[i]);
      idx /= inputs[i];
    }
  }
  void unflatten_outcome(std::size_t idx, std::vector<int>& o) const {
    o.resize(n_parties);
    for (int i = 0; i < n_parties; ++i) {
      o[i] = static_cast<int>(idx % outputs[i]);
      idx /= outputs[i];
    }
  }
  std::size_t table_index(const std::vector<int>& x, const std::vector<int>& o) const {
    return flat_input(x) * outcome_tuples() + flat_outcome(o);
  }
};

// ---------------------------------------------------------------------------
// Collins-Gisin coordinates. The per-party coordinate is 0 ("traced out") or
// 1 + x * (d - 1) + o for an input x and one of the first d-1 outcomes; the
// coordinate value is the joint probability that every named party gives its
// named outcome at its named input. No-signaling makes these well-defined,
// and any coordinate vector reproduces a signaling-free table.

struct CgIndexer {
  Scenario sc;
  std::vector<int> radices;

  explicit CgIndexer(const Scenario& s) : sc(s) {
    for (int i = 0; i < s.n_parties; ++i) radices.push_back(s.inputs[i] * (s.outputs[i] - 1) + 1);
  }

  std::size_t dimension() const {
    std::size_t t = 1;
    for (int r : radices) t *= static_cast<std::size_t>(r);
    return t;
  }

  std::size_t flatten(const std::vector<int>& coords) const {
    std::size_t idx = 0;
    for (int i = sc.n_parties - 1; i >= 0; --i) idx = idx * radices[i] + coords[i];
    return idx;
  }

  void unflatten(std::size_t idx, std::vector<int>& coords) const {
    coords.resize(sc.n_parties);
    for (int i = 0; i < sc.n_parties; ++i) {
      coords[i] = static_cast<int>(idx % radices[i]);
      idx /= radices[i];
    }
  }

  int coord_of(int party, int input, int outcome) const {
    return 1 + input * (sc.outputs[party] - 1) + outcome;
  }
};

struct NSBox {
  Scenario scenario;
  std::vector<double> full_table;  // indexed by scenario.table_index
  std::vector<double> cg;          // Collins-Gisin coordinates

  double prob(const std::vector<int>& x, const std::vector<int>& o) const {
    return full_table[scenario.table_index(x, o)];
  }
};

/// Normalization, positivity and marginal independence of each party's input.
inline void check_ns_box(const Scenario& sc, const std::vector<double>& table, double tol = 1e-9) {
  require(table.size() == sc.table_size(), errc::dimension_mismatch, "bad table size");
  for (double p : table)
    require(p >= -tol, errc::bad_normalization, "negative probability in table");
  std::vector<int> x, o;
  for (std::size_t xi = 0; xi < sc.input_tuples(); ++xi) {
    double s = 0;
    for (std::size_t oi = 0; oi < sc.outcome_tuples(); ++oi)
      s += table[xi * sc.outcome_tuples() + oi];
    require(std::abs(s - 1.0) < tol, errc::bad_normalization, "table not normalized");
  }
  // For every party: the marginal over the rest must not depend on its input.
  for (int i = 0; i < sc.n_parties; ++i) {
    for (std::size_t xi = 0; xi < sc.input_tuples(); ++xi) {
      sc.unflatten_input(xi, x);
      if (x[i] != 0) continue;
      for (std::size_t oi = 0; oi < sc.outcome_tuples(); ++oi) {
        sc.unflatten_outcome(oi, o);
        if (o[i] != 0) continue;
        // marginal over o[i] with x[i] = 0 vs x[i] = t
        double base = 0;
        for (int w = 0; w < sc.outputs[i]; ++w) {
          o[i] = w;
          base += table[sc.table_index(x, o)];
        }
        for (int t = 1; t < sc.inputs[i]; ++t) {
          x[i] = t;
          double alt = 0;
          for (int w = 0; w < sc.outputs[i]; ++w) {
            o[i] = w;
            alt += table[sc.table_index(x, o)];
          }
          require(std::abs(alt - base) < tol, errc::bad_normalization,
                  "table signals through party " + std::to_string(i));
          x[i] = 0;
        }
        o[i] = 0;
      }
    }
  }
}

/// Full table -> Collins-Gisin coordinates (free parties get input 0, which
/// is safe for no-signaling boxes).
inline std::vector<double> cg_parametrize(const Scenario& sc, const std::vector<double>& table) {
  CgIndexer ix(sc);
  std::vector<double> cg(ix.dimension(), 0.0);
  std::vector<int> coords, x(sc.n_parties, 0), o(sc.n_parties, 0);
  for (std::size_t ci = 0; ci < cg.size(); ++ci) {
    ix.unflatten(ci, coords);
    // Marked parties: fixed input/outcome. Unmarked: input 0, summed out.
    std::vector<int> fixed(sc.n_parties, -1);
    for (int i = 0; i < sc.n_parties; ++i) {
      if (coords[i] == 0) {
        x[i] = 0;
        continue;
      }
      int c = coords[i] - 1;
      x[i] = c / (sc.outputs[i] - 1);
      fixed[i] = c % (sc.outputs[i] - 1);
    }
    double s = 0;
    for (std::size_t oi = 0; oi < sc.outcome_tuples(); ++oi) {
      sc.unflatten_outcome(oi, o);
      bool match = true;
      for (int i = 0; i < sc.n_parties; ++i)
        if (fixed[i] >= 0 && o[i] != fixed[i]) match = false;
      if (match) s += table[sc.table_index(x, o)];
    }
    cg[ci] = s;
  }
  return cg;
}

/// Collins-Gisin coordinates -> full table (always signaling-free).
inline std::vector<double> cg_to_full(const Scenario& sc, const std::vector<double>& cg) {
  CgIndexer ix(sc);
  require(cg.size() == ix.dimension(), errc::dimension_mismatch, "cg vector has wrong size");
  std::vector<double> table(sc.table_size(), 0.0);
  std::vector<int> x, o, coords(sc.n_parties);
  for (std::size_t xi = 0; xi < sc.input_tuples(); ++xi) {
    sc.unflatten_input(xi, x);
    for (std::size_t oi = 0; oi < sc.outcome_tuples(); ++oi) {
      sc.unflatten_outcome(oi, o);
      // parties with the last outcome expand as 1 - sum of the others
      std::vector<int> last_parties;
      for (int i = 0; i < sc.n_parties; ++i)
        if (o[i] == sc.outputs[i] - 1) last_parties.push_back(i);
      double total = 0;
      const int k = static_cast<int>(last_parties.size());
      for (int sub = 0; sub < (1 << k); ++sub) {
        // assign "one of the first d-1 outcomes" to parties in sub
        std::vector<int> members;
        for (int b = 0; b < k; ++b)
          if ((sub >> b) & 1) members.push_back(last_parties[b]);
        int sign = (members.size() % 2) ? -1 : 1;
        // iterate over outcome assignments for the members
        std::vector<int> w(members.size(), 0);
        while (true) {
          for (int i = 0; i < sc.n_parties; ++i) coords[i] = 0;
          for (int i = 0; i < sc.n_parties; ++i)
            if (o[i] != sc.outputs[i] - 1) coords[i] = ix.coord_of(i, x[i], o[i]);
          for (std::size_t b = 0; b < members.size(); ++b)
            coords[members[b]] = ix.coord_of(members[b], x[members[b]], w[b]);
          total += sign * cg[ix.flatten(coords)];
          // advance the mixed-radix counter w
          std::size_t pos = 0;
          while (pos < w.size()) {
            if (++w[pos] < sc.outputs[members[pos]] - 1) break;
            w[pos] = 0;
            ++pos;
          }
          if (pos == w.size()) break;
        }
      }
      table[sc.table_index(x, o)] = total;
    }
  }
  return table;
}

inline NSBox make_box_from_table(const Scenario& sc, std::vector<double> table) {
  check_ns_box(sc, table);
  NSBox box;
  box.scenario = sc;
  box.full_table = std::move(table);
  box.cg = cg_parametrize(sc, box.full_table);
  return box;
}

/// Deterministic local box from per-party output tables out[i][x] in
/// [0, d_i).
inline std::vector<double> deterministic_table(const Scenario& sc,
                                               const std::vector<std::vector<int>>& out) {
  std::vector<double> table(sc.table_size(), 0.0);
  std::vector<int> x, o(sc.n_parties);
  for (std::size_t xi = 0; xi < sc.input_tuples(); ++xi) {
    sc.unflatten_input(xi, x);
    for (int i = 0; i < sc.n_parties; ++i) o[i] = out[i][x[i]];
    table[sc.table_index(x, o)] = 1.0;
  }
  return table;
}

inline std::vector<double> white_noise_table(const Scenario& sc) {
  double p = 1.0 / static_cast<double>(sc.outcome_tuples());
  return std::vector<double>(sc.table_size(), p);
}

/// PR box at (2,2,2): E(x,y) = (-1)^{xy} with uniform marginals.
inline std::vector<double> pr_box_table() {
  Scenario sc = Scenario::uniform(2, 2, 2);
  std::vector<double> table(sc.table_size(), 0.0);
  std::vector<int> x(2), o(2);
  for (x[0] = 0; x[0] < 2; ++x[0])
    for (x[1] = 0; x[1] < 2; ++x[1])
      for (o[0] = 0; o[0] < 2; ++o[0])
        for (o[1] = 0; o[1] < 2; ++o[1])
          if (((o[0] + o[1]) & 1) == (x[0] & x[1]))
            table[sc.table_index(x, o)] = 0.5;
  return table;
}

// ---------------------------------------------------------------------------
// Linear objectives over full correlators of binary-outcome parties.

/// gamma * E_S(x_S) terms; outcome +1 is outcome 0.
struct CorrelatorTerm {
  std::vector<int> parties;
  std::vector<int> inputs;  // one input per named party
  double coeff = 0;
};

struct LinearObjectiveNS {
  std::vector<CorrelatorTerm> terms;

  /// Adds expr with the given party embedding (expression party i ->
  /// scenario party map[i]).
  void add_expression(const CorrelationExpression& e, const std::vector<int>& map,
                      double weight = 1.0) {
    require(static_cast<int>(map.size()) == e.n_parties, errc::shape_mismatch,
            "objective: embedding size mismatch");
    std::vector<int> x;
    for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
      double c = e.coeffs[idx];
      if (c == 0.0) continue;
      e.unflatten(idx, x);
      terms.push_back({map, x, weight * c});
    }
  }
};

/// Expands the objective into Collins-Gisin coordinates:
/// E_S(x_S) = sum_{T subset S} 2^{|T|} (-1)^{|S \ T|} p(T, x_T).
inline std::vector<double> objective_cg_vector(const Scenario& sc,
                                               const LinearObjectiveNS& obj) {
  for (int d : sc.outputs)
    require(d == 2, errc::bad_input, "correlator objectives need binary outcomes");
  CgIndexer ix(sc);
  std::vector<double> c(ix.dimension(), 0.0);
  std::vector<int> coords(sc.n_parties, 0);
  for (const auto& term : obj.terms) {
    const int k = static_cast<int>(term.parties.size());
    for (int sub = 0; sub < (1 << k); ++sub) {
      std::fill(coords.begin(), coords.end(), 0);
      int tsize = 0;
      for (int b = 0; b < k; ++b)
        if ((sub >> b) & 1) {
          coords[term.parties[b]] = ix.coord_of(term.parties[b], term.inputs[b], 0);
          ++tsize;
        }
      double w = term.coeff * std::pow(2.0, tsize) * ((k - tsize) % 2 ? -1.0 : 1.0);
      c[ix.flatten(coords)] += w;
    }
  }
  return c;
}

inline double objective_value_on_table(const Scenario& sc, const LinearObjectiveNS& obj,
                                       const std::vector<double>& table) {
  std::vector<double> cg = cg_parametrize(sc, table);
  std::vector<double> c = objective_cg_vector(sc, obj);
  double v = 0;
  for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * cg[i];
  return v;
}

// ---------------------------------------------------------------------------
// Exact rationals for the small-instance cross-check mode.

struct Rat {
  long long n = 0, d = 1;

  Rat() = default;
  Rat(long long num) : n(num), d(1) {}
  Rat(long long num, long long den) : n(num), d(den) { normalize(); }

  static long long gcd_ll(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
      long long t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    require(d != 0, errc::lp_numerical_failure, "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = gcd_ll(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }

  static Rat make_checked(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num, b = den;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    constexpr __int128 lim = (__int128)1 << 62;
    require(num < lim && num > -lim && den < lim, errc::lp_numerical_failure,
            "rational overflow in exact mode");
    Rat r;
    r.n = static_cast<long long>(num);
    r.d = static_cast<long long>(den);
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make_checked((__int128)a.n * b.d + (__int128)b.n * a.d, (__int128)a.d * b.d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make_checked((__int128)a.n * b.d - (__int128)b.n * a.d, (__int128)a.d * b.d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make_checked((__int128)a.n * b.n, (__int128)a.d * b.d);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    require(b.n != 0, errc::lp_numerical_failure, "rational division by zero");
    return make_checked((__int128)a.n * b.d, (__int128)a.d * b.n);
  }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.n * b.d < (__int128)b.n * a.d;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.n == b.n && a.d == b.d; }

  double to_double() const { return static_cast<double>(n) / static_cast<double>(d); }
};

namespace detail {

template <class T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double zero() { return 0.0; }
  static double from_double(double x) { return x; }
  static bool positive(double x) { return x > 1e-9; }
  static bool negative(double x) { return x < -1e-9; }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarOps<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat from_double(double x) {
    // inputs are small dyadic/simple rationals; snap to denominator 2^20
    long long den = 1LL << 20;
    long long num = static_cast<long long>(std::llround(x * static_cast<double>(den)));
    return Rat(num, den);
  }
  static bool positive(const Rat& x) { return x.n > 0; }
  static bool negative(const Rat& x) { return x.n < 0; }
  static double to_double(const Rat& x) { return x.to_double(); }
};

}  // namespace detail

struct LPResult {
  double value = 0;
  int basis_size = 0;
  std::uint64_t iterations = 0;
  std::string mode;
};

namespace detail {

/// Primal simplex for: maximize c.w subject to A w <= b, w >= 0, b >= 0.
/// Entering column by Bland's rule; ratio ties broken by the smallest basis
/// label. Dense tableau.
template <class T>
LPResult simplex_max(const std::vector<std::vector<T>>& A, const std::vector<T>& b,
                     const std::vector<T>& c, std::uint64_t max_iters = 2000000) {
  using Ops = ScalarOps<T>;
  const int q = static_cast<int>(A.size());
  const int p = static_cast<int>(c.size());
  const int cols = p + q;

  std::vector<std::vector<T>> tab(q, std::vector<T>(cols + 1, Ops::zero()));
  for (int r = 0; r < q; ++r) {
    for (int j = 0; j < p; ++j) tab[r][j] = A[r][j];
    tab[r][p + r] = Ops::from_double(1.0);
    tab[r][cols] = b[r];
  }
  std::vector<T> red(cols + 1, Ops::zero());
  for (int j = 0; j < p; ++j) red[j] = c[j];
  std::vector<int> basis(q);
  for (int r = 0; r < q; ++r) basis[r] = p + r;

  LPResult res;
  std::uint64_t it = 0;
  while (true) {
    ++it;
    require(it < max_iters, errc::lp_numerical_failure, "simplex iteration cap exceeded");
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (Ops::positive(red[j])) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    T best_ratio = Ops::zero();
    for (int r = 0; r < q; ++r) {
      if (!Ops::positive(tab[r][enter])) continue;
      T ratio = tab[r][cols] / tab[r][enter];
      bool better = leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[r] < basis[leave]);
      if (better) {
        leave = r;
        best_ratio = ratio;
      }
    }
    require(leave >= 0, errc::lp_numerical_failure, "LP unbounded");
    // pivot
    T piv = tab[leave][enter];
    for (int j = 0; j <= cols; ++j) tab[leave][j] = tab[leave][j] / piv;
    for (int r = 0; r < q; ++r) {
      if (r == leave) continue;
      T f = tab[r][enter];
      if (f == Ops::zero()) continue;
      for (int j = 0; j <= cols; ++j) tab[r][j] = tab[r][j] - f * tab[leave][j];
    }
    {
      T f = red[enter];
      for (int j = 0; j <= cols; ++j) red[j] = red[j] - f * tab[leave][j];
    }
    basis[leave] = enter;
  }
  // value = -red[cols] (reduced-cost row accumulated -c.w)
  res.value = -Ops::to_double(red[cols]);
  res.basis_size = q;
  res.iterations = it;
  return res;
}

}  // namespace detail

/// Maximum of the objective over the no-signaling polytope, by simplex over
/// Collins-Gisin coordinates with full-table positivity constraints.
inline LPResult ns_max(const Scenario& sc, const LinearObjectiveNS& obj, bool exact = false) {
  require(sc.cg_dimension() <= 3000, errc::too_large, "ns_max: too many CG variables");
  require(sc.table_size() <= 200000, errc::too_large, "ns_max: too many positivity rows");
  CgIndexer ix(sc);
  const std::size_t dim = ix.dimension();
  const std::size_t rows = sc.table_size();

  // Row r of the table as affine function of the CG coordinates:
  // table_r = b_r + sum_j M[r][j] w_j  (w = cg without the constant coord).
  std::vector<std::vector<double>> M(rows, std::vector<double>(dim - 1, 0.0));
  std::vector<double> b(rows, 0.0);
  {
    // cg_to_full is linear; evaluate on basis vectors.
    std::vector<double> cg(dim, 0.0);
    cg[0] = 1.0;
    std::vector<double> base = cg_to_full(sc, cg);
    for (std::size_t r = 0; r < rows; ++r) b[r] = base[r];
    for (std::size_t j = 1; j < dim; ++j) {
      std::fill(cg.begin(), cg.end(), 0.0);
      cg[0] = 1.0;
      cg[j] = 1.0;
      std::vector<double> col = cg_to_full(sc, cg);
      for (std::size_t r = 0; r < rows; ++r) M[r][j - 1] = col[r] - base[r];
    }
  }
  std::vector<double> cvec = objective_cg_vector(sc, obj);
  double c0 = cvec[0];

  LPResult res;
  if (!exact) {
    std::vector<std::vector<double>> A(rows, std::vector<double>(dim - 1));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t j = 0; j + 1 < dim; ++j) A[r][j] = -M[r][j];
    std::vector<double> c(dim - 1);
    for (std::size_t j = 1; j < dim; ++j) c[j - 1] = cvec[j];
    res = detail::simplex_max<double>(A, b, c);
    res.mode = "float";
  } else {
    require(rows <= 1024, errc::too_large, "exact mode limited to 1024 constraints");
    std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(dim - 1));
    std::vector<Rat> br(rows), c(dim - 1);
    for (std::size_t r = 0; r < rows; ++r) {
      br[r] = detail::ScalarOps<Rat>::from_double(b[r]);
      for (std::size_t j = 0; j + 1 < dim; ++j)
        A[r][j] = detail::ScalarOps<Rat>::from_double(-M[r][j]);
    }
    for (std::size_t j = 1; j < dim; ++j) c[j - 1] = detail::ScalarOps<Rat>::from_double(cvec[j]);
    res = detail::simplex_max<Rat>(A, br, c);
    res.mode = "exact";
  }
  res.value += c0;
  return res;
}

// ---------------------------------------------------------------------------
// Linear no-signaling trade-off for copy networks and the gluing model
// behind it.

struct ShiftedSumBound {
  double bound = 0;
  std::vector<std::vector<int>> shifts;  // one k-vector per shifted term
};

/// One distinguished party plays the base expression with m_i copies of
/// every other party in all combinations; every no-signaling behavior obeys
/// sum <= beta_c * prod_i m_i.
inline ShiftedSumBound copy_network_bound(const CorrelationExpression& base,
                                          double beta_c,
                                          const std::vector<int>& copy_counts) {
  require(static_cast<int>(copy_counts.size()) == base.n_parties - 1, errc::shape_mismatch,
          "copy_network_bound: one copy count per non-distinguished party");
  ShiftedSumBound out;
  double prod = 1;
  for (int m : copy_counts) {
    require(m >= 1, errc::bad_input, "copy counts must be >= 1");
    prod *= m;
  }
  out.bound = beta_c * prod;
  std::vector<int> k(copy_counts.size(), 0);
  while (true) {
    out.shifts.push_back(k);
    std::size_t pos = 0;
    while (pos < k.size()) {
      if (++k[pos] < copy_counts[pos]) break;
      k[pos] = 0;
      ++pos;
    }
    if (pos == k.size()) break;
  }
  return out;
}

struct GluedModel {
  int m1 = 0;                       // first party's input count
  std::vector<int> other_outputs;   // output counts of the conditioned parties
  std::vector<double> joint;        // over (o_1^{(0)}, .., o_1^{(m1-1)}, others)
};

/// Explicit joint distribution over one output of the first party per input
/// together with the other parties' outputs at fixed inputs:
/// P(o_vec, others) = prod_l P(o_l, others | x_1 = l) / P(others)^{m1-1}.
/// Reproduces every single-input marginal of the box.
inline GluedModel glued_local_model(const NSBox& box, const std::vector<int>& fixed_inputs,
                                    double zero_tol = 1e-12) {
  const Scenario& sc = box.scenario;
  require(static_cast<int>(fixed_inputs.size()) == sc.n_parties - 1, errc::shape_mismatch,
          "glued_local_model: fixed inputs for every party but the first");
  GluedModel model;
  model.m1 = sc.inputs[0];
  for (int i = 1; i < sc.n_parties; ++i) model.other_outputs.push_back(sc.outputs[i]);

  std::size_t others = 1;
  for (int d : model.other_outputs) others *= static_cast<std::size_t>(d);
  std::size_t alice = 1;
  for (int l = 0; l < model.m1; ++l) alice *= static_cast<std::size_t>(sc.outputs[0]);
  model.joint.assign(alice * others, 0.0);

  std::vector<int> x(sc.n_parties), o(sc.n_parties);
  x[0] = 0;
  for (int i = 1; i < sc.n_parties; ++i) x[i] = fixed_inputs[i - 1];

  // marginal of the others (independent of x_0 by no-signaling)
  std::vector<double> marg(others, 0.0);
  for (std::size_t w = 0; w < others; ++w) {
    std::size_t t = w;
    for (int i = 1; i < sc.n_parties; ++i) {
      o[i] = static_cast<int>(t % sc.outputs[i]);
      t /= sc.outputs[i];
    }
    for (int a = 0; a < sc.outputs[0]; ++a) {
      o[0] = a;
      marg[w] += box.prob(x, o);
    }
  }

  for (std::size_t w = 0; w < others; ++w) {
    std::size_t t = w;
    for (int i = 1; i < sc.n_parties; ++i) {
      o[i] = static_cast<int>(t % sc.outputs[i]);
      t /= sc.outputs[i];
    }
    std::vector<double> cond;  // P(o_0 | others, x_0 = l), flattened by (l, a)
    if (marg[w] < zero_tol) {
      bool needed = false;
      for (int l = 0; l < model.m1; ++l) {
        x[0] = l;
        for (int a = 0; a < sc.outputs[0]; ++a) {
          o[0] = a;
          if (box.prob(x, o) > zero_tol) needed = true;
        }
      }
      x[0] = 0;
      require(!needed, errc::zero_marginal,
              "glued_local_model: zero conditioning marginal with positive joint");
      continue;  // whole fiber has probability 0
    }
    cond.resize(static_cast<std::size_t>(model.m1) * sc.outputs[0]);
    for (int l = 0; l < model.m1; ++l) {
      x[0] = l;
      for (int a = 0; a < sc.outputs[0]; ++a) {
        o[0] = a;
        cond[static_cast<std::size_t>(l) * sc.outputs[0] + a] = box.prob(x, o) / marg[w];
      }
    }
    x[0] = 0;
    for (std::size_t av = 0; av < alice; ++av) {
      double p = marg[w];
      std::size_t tt = av;
      for (int l = 0; l < model.m1; ++l) {
        int a = static_cast<int>(tt % sc.outputs[0]);
        tt /= sc.outputs[0];
        p *= cond[static_cast<std::size_t>(l) * sc.outputs[0] + a];
      }
      model.joint[av * others + w] = p;
    }
  }
  return model;
}

/// Marginal of the glued model for one of the first party's inputs, as a
/// table over (o_1, others); compare against the box at that input.
inline std::vector<double> glued_model_marginal(const GluedModel& model, int input,
                                                int d_first) {
  std::size_t others = model.joint.size();
  std::size_t alice = 1;
  for (int l = 0; l < model.m1; ++l) alice *= static_cast<std::size_t>(d_first);
  others /= alice;
  std::vector<double> out(static_cast<std::size_t>(d_first) * others, 0.0);
  for (std::size_t av = 0; av < alice; ++av) {
    std::size_t tt = av;
    int a_at_input = 0;
    for (int l = 0; l < model.m1; ++l) {
      int a = static_cast<int>(tt % d_first);
      tt /= d_first;
      if (l == input) a_at_input = a;
    }
    for (std::size_t w = 0; w < others; ++w)
      out[static_cast<std::size_t>(a_at_input) * others + w] += model.joint[av * others + w];
  }
  return out;
}

}  // namespace bellmono
