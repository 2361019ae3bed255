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
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "bellmono/common.hpp"
#include "bellmono/inequalities.hpp"
#include "bellmono/linalg.hpp"
#include "bellmono/pauli.hpp"

namespace bellmono {

struct StateVector {
  int n_qubits = 0;
  std::vector<cplx> amps;

  StateVector() = default;
  explicit StateVector(int n) : n_qubits(n), amps(std::size_t(1) << n, cplx(0, 0)) {
    require(n >= 1 && n <= 24, errc::too_many_qubits, "StateVector: bad qubit count");
  }

  std::size_t dim() const { return amps.size(); }

  double norm2() const {
    double s = 0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
  }

  void normalize() {
    double n = std::sqrt(norm2());
    require(n > 1e-12, errc::bad_normalization, "cannot normalize the zero vector");
    for (auto& a : amps) a /= n;
  }

  static StateVector basis(int n, std::uint64_t idx) {
    StateVector s(n);
    s.amps[idx] = 1.0;
    return s;
  }

  static StateVector ghz(int n) {
    StateVector s(n);
    s.amps[0] = 1.0 / std::numbers::sqrt2;
    s.amps[s.dim() - 1] = 1.0 / std::numbers::sqrt2;
    return s;
  }

  static StateVector random(int n, Rng& rng) {
    StateVector s(n);
    for (auto& a : s.amps) a = cplx(rng.normal(), rng.normal());
    s.normalize();
    return s;
  }
};

inline cplx inner(const StateVector& a, const StateVector& b) {
  cplx s(0, 0);
  for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
  return s;
}

/// In-place application of a single-qubit operator given as a 2x2 matrix
/// [[m00, m01], [m10, m11]].
inline void apply_1q(StateVector& s, int qubit, cplx m00, cplx m01, cplx m10, cplx m11) {
  const std::uint64_t bit = 1ULL << qubit;
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    if (i & bit) continue;
    cplx a0 = s.amps[i], a1 = s.amps[i | bit];
    s.amps[i] = m00 * a0 + m01 * a1;
    s.amps[i | bit] = m10 * a0 + m11 * a1;
  }
}

/// Applies the observable n.sigma at the given qubit.
inline void apply_bloch(StateVector& s, int qubit, const Vec3& n) {
  apply_1q(s, qubit, cplx(n[2], 0), cplx(n[0], -n[1]), cplx(n[0], n[1]), cplx(-n[2], 0));
}

/// <psi| P |psi> for a Hermitian Pauli string, by bit-twiddling (no dense
/// matrix). The imaginary residue must vanish.
inline double expectation_pauli(const StateVector& s, const PauliString& p) {
  require(p.n_qubits() == s.n_qubits, errc::size_mismatch, "expectation_pauli: size mismatch");
  require(p.is_hermitian(), errc::non_hermitian, "expectation_pauli: non-Hermitian operator");
  static const cplx iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::uint64_t a = p.x_bits(), b = p.z_bits();
  cplx acc(0, 0);
  for (std::uint64_t t = 0; t < s.dim(); ++t) {
    double sign = (std::popcount(b & t) & 1) ? -1.0 : 1.0;
    acc += std::conj(s.amps[t ^ a]) * s.amps[t] * sign;
  }
  acc *= iphase[p.phase_exp()];
  require(std::abs(acc.imag()) < 1e-10, errc::non_hermitian,
          "expectation_pauli: imaginary residue");
  return acc.real();
}

/// One Bloch observable per party per input on a one-qubit-per-party
/// register. Party i acts on qubit i.
struct QuantumStrategy {
  StateVector state;
  std::vector<std::vector<Vec3>> observables;  // [party][input]

  void check(double tol = 1e-10) const {
    require(static_cast<int>(observables.size()) <= state.n_qubits, errc::shape_mismatch,
            "more parties than qubits");
    require(std::abs(state.norm2() - 1.0) < tol * 100, errc::bad_normalization,
            "state not normalized");
    for (const auto& party : observables)
      for (const auto& v : party)
        require(std::abs(norm(v) - 1.0) < tol * 100, errc::bad_normalization,
                "non-unit Bloch vector");
  }
};

inline QuantumStrategy random_strategy(int n_parties, const std::vector<int>& inputs, Rng& rng) {
  QuantumStrategy st;
  st.state = StateVector::random(n_parties, rng);
  st.observables.resize(n_parties);
  for (int i = 0; i < n_parties; ++i)
    for (int x = 0; x < inputs[i]; ++x) st.observables[i].push_back(random_unit_vec3(rng));
  return st;
}

/// E(x_1..x_n) for the tuple x: <psi| prod_i A^(i)_{x_i} |psi> where party i
/// measures qubit party_qubits[i].
inline double correlator(const StateVector& state, const std::vector<int>& party_qubits,
                         const std::vector<const Vec3*>& obs) {
  StateVector phi = state;
  for (std::size_t i = 0; i < party_qubits.size(); ++i)
    apply_bloch(phi, party_qubits[i], *obs[i]);
  cplx v = inner(state, phi);
  return v.real();
}

/// Contraction sum_x C_x <psi| tensor_i A^(i)_{x_i} |psi>. Parties of the
/// expression map to qubits via party_qubits (identity mapping if empty).
inline double bell_value(const CorrelationExpression& e, const QuantumStrategy& strat,
                         std::vector<int> party_qubits = {}) {
  if (party_qubits.empty()) {
    party_qubits.resize(e.n_parties);
    for (int i = 0; i < e.n_parties; ++i) party_qubits[i] = i;
  }
  require(static_cast<int>(party_qubits.size()) == e.n_parties, errc::shape_mismatch,
          "bell_value: party map size mismatch");
  for (int i = 0; i < e.n_parties; ++i)
    require(static_cast<int>(strat.observables[party_qubits[i]].size()) >= e.inputs[i],
            errc::shape_mismatch, "bell_value: missing observables");
  double total = 0;
  std::vector<int> x;
  std::vector<const Vec3*> obs(e.n_parties);
  for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
    double c = e.coeffs[idx];
    if (c == 0.0) continue;
    e.unflatten(idx, x);
    for (int i = 0; i < e.n_parties; ++i) obs[i] = &strat.observables[party_qubits[i]][x[i]];
    total += c * correlator(strat.state, party_qubits, obs);
  }
  return total;
}

/// Sum of squared correlation-tensor entries over one edge, with a declared
/// two-axis plane per involved qubit: sum over k in {0,1}^|e| of
/// <psi| tensor (axis_k at edge qubits) |psi>^2.
inline double edge_value_squared(const StateVector& state, const std::vector<int>& edge_qubits,
                                 const std::vector<std::array<Vec3, 2>>& axes) {
  require(edge_qubits.size() == axes.size(), errc::shape_mismatch,
          "edge_value_squared: axes per qubit required");
  for (const auto& pair : axes)
    require(std::abs(dot(pair[0], pair[1])) < 1e-9, errc::bad_normalization,
            "edge_value_squared: axes must be orthogonal");
  const int k = static_cast<int>(edge_qubits.size());
  double sum = 0;
  std::vector<const Vec3*> obs(k);
  for (int bits = 0; bits < (1 << k); ++bits) {
    StateVector phi = state;
    for (int i = 0; i < k; ++i) apply_bloch(phi, edge_qubits[i], axes[i][(bits >> i) & 1]);
    double t = inner(state, phi).real();
    sum += t * t;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Power iteration for top eigenvectors of Hermitian operators given as
// matrix-vector closures.

using MatVec = std::function<void(const StateVector&, StateVector&)>;

/// Top eigenvector of H via power iteration on H + shift (shift must exceed
/// ||H|| so the spectrum is positive). Deterministic given the start vector.
inline double power_top_eigen(const MatVec& H, double shift, StateVector& v, int max_iters = 5000,
                              double tol = 1e-12) {
  StateVector w = v;
  double ray = 0;
  for (int it = 0; it < max_iters; ++it) {
    H(v, w);
    ray = 0;
    for (std::size_t i = 0; i < v.dim(); ++i) ray += (std::conj(v.amps[i]) * w.amps[i]).real();
    // w <- (H + shift) v
    double res2 = 0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      cplx r = w.amps[i] - ray * v.amps[i];
      res2 += std::norm(r);
      w.amps[i] += shift * v.amps[i];
    }
    w.normalize();
    std::swap(v.amps, w.amps);
    if (std::sqrt(res2) < tol * (std::abs(ray) + shift)) break;
  }
  return ray;
}

// ---------------------------------------------------------------------------
// Seesaw optimization of weighted sums of Bell expressions.

struct WeightedEdgeObjective {
  const CorrelationExpression* expr;  // normalized per-edge payload
  std::vector<int> party_qubits;      // qubits of the edge parties
  double weight;
};

struct SeesawOptions {
  int restarts = 32;
  int max_iters = 400;
  double rel_tol = 1e-10;
  std::uint64_t master_seed = 1;
};

struct SeesawResult {
  QuantumStrategy strategy;
  double objective = 0;
  std::vector<double> edge_values;
  std::uint64_t best_seed = 0;
  int iterations = 0;
};

namespace detail {

inline void apply_objective_operator(const std::vector<WeightedEdgeObjective>& objs,
                                     const std::vector<std::vector<Vec3>>& obs,
                                     const StateVector& in, StateVector& out) {
  std::fill(out.amps.begin(), out.amps.end(), cplx(0, 0));
  std::vector<int> x;
  for (const auto& o : objs) {
    const auto& e = *o.expr;
    for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
      double c = e.coeffs[idx];
      if (c == 0.0) continue;
      e.unflatten(idx, x);
      StateVector tmp = in;
      for (int i = 0; i < e.n_parties; ++i)
        apply_bloch(tmp, o.party_qubits[i], obs[o.party_qubits[i]][x[i]]);
      const double w = o.weight * c;
      for (std::size_t k = 0; k < out.dim(); ++k) out.amps[k] += w * tmp.amps[k];
    }
  }
}

inline double objective_value(const std::vector<WeightedEdgeObjective>& objs,
                              const QuantumStrategy& st) {
  double v = 0;
  for (const auto& o : objs) v += o.weight * bell_value(*o.expr, st, o.party_qubits);
  return v;
}

}  // namespace detail

/// Alternating maximization: (a) state <- top eigenvector of the weighted
/// Bell operator, (b) every party-input Bloch vector <- unit vector along
/// its linear-response gradient. The objective is nondecreasing; the best
/// restart (by value, then seed) is returned.
inline SeesawResult seesaw_maximize(int n_qubits, const std::vector<int>& inputs_per_qubit,
                                    const std::vector<WeightedEdgeObjective>& objs,
                                    const SeesawOptions& opt = {}) {
  require(n_qubits <= 10, errc::too_many_qubits, "seesaw_maximize: more than 10 qubits");
  double op_norm_bound = 1.0;
  for (const auto& o : objs) {
    double s = 0;
    for (double c : o.expr->coeffs) s += std::abs(c);
    op_norm_bound += std::abs(o.weight) * s;
  }

  SeesawResult best;
  best.objective = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < opt.restarts; ++r) {
    std::uint64_t seed = Rng::derive(opt.master_seed, static_cast<std::uint64_t>(r));
    Rng rng(seed);
    QuantumStrategy st;
    st.state = StateVector::random(n_qubits, rng);
    st.observables.resize(n_qubits);
    for (int q = 0; q < n_qubits; ++q)
      for (int x = 0; x < inputs_per_qubit[q]; ++x)
        st.observables[q].push_back(random_unit_vec3(rng));

    double prev = detail::objective_value(objs, st);
    int iters = 0;
    for (int it = 0; it < opt.max_iters; ++it) {
      ++iters;
      // (a) state step
      MatVec H = [&](const StateVector& in, StateVector& out) {
        detail::apply_objective_operator(objs, st.observables, in, out);
      };
      power_top_eigen(H, op_norm_bound, st.state);

      // (b) observable steps, one party-input at a time
      for (int q = 0; q < n_qubits; ++q) {
        for (std::size_t x = 0; x < st.observables[q].size(); ++x) {
          Vec3 grad{0, 0, 0};
          static const Vec3 axes[3] = {kAxisX, kAxisY, kAxisZ};
          for (int k = 0; k < 3; ++k) {
            Vec3 saved = st.observables[q][x];
            st.observables[q][x] = axes[k];
            double vk = 0;
            std::vector<int> xt;
            for (const auto& o : objs) {
              bool involves = false;
              int slot = -1;
              for (std::size_t i = 0; i < o.party_qubits.size(); ++i)
                if (o.party_qubits[i] == q) {
                  involves = true;
                  slot = static_cast<int>(i);
                }
              if (!involves) continue;
              const auto& e = *o.expr;
              std::vector<const Vec3*> obs(e.n_parties);
              for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
                double c = e.coeffs[idx];
                if (c == 0.0) continue;
                e.unflatten(idx, xt);
                if (xt[slot] != static_cast<int>(x)) continue;
                for (int i = 0; i < e.n_parties; ++i)
                  obs[i] = &st.observables[o.party_qubits[i]][xt[i]];
                vk += o.weight * c * correlator(st.state, o.party_qubits, obs);
              }
            }
            grad[k] = vk;
            st.observables[q][x] = saved;
          }
          double g = norm(grad);
          if (g > 1e-12) st.observables[q][x] = {grad[0] / g, grad[1] / g, grad[2] / g};
        }
      }

      double cur = detail::objective_value(objs, st);
      require(cur >= prev - 1e-9, errc::lp_numerical_failure,
              "seesaw objective decreased; numerical failure");
      if (std::abs(cur - prev) < opt.rel_tol * (std::abs(cur) + 1.0)) {
        prev = cur;
        break;
      }
      prev = cur;
    }

    if (prev > best.objective) {
      best.objective = prev;
      best.strategy = st;
      best.best_seed = seed;
      best.iterations = iters;
    }
  }

  best.edge_values.clear();
  for (const auto& o : objs)
    best.edge_values.push_back(bell_value(*o.expr, best.strategy, o.party_qubits));
  return best;
}

// ---------------------------------------------------------------------------
// Explicit strategies.

/// theta in [0, pi/4]: three-qubit box with CHSH' values
/// (2 sqrt2 cos theta, 2 sqrt2 sin theta) for CHSH' = A1B1 + A1B2 - A2B1 + A2B2.
inline QuantumStrategy flat_box1(double theta) {
  require(theta >= -1e-12 && theta <= std::numbers::pi / 4 + 1e-12, errc::theta_out_of_domain,
          "flat_box1: theta must lie in [0, pi/4]");
  QuantumStrategy st;
  st.state = StateVector(3);
  double am = std::sqrt(1.0 - std::numbers::sqrt2 * std::sin(theta)) / 2.0;
  double ap = std::sqrt(1.0 + std::numbers::sqrt2 * std::sin(theta)) / 2.0;
  // qubit 0 is the lowest bit: |abc> has a at bit 0
  auto idx = [](int a, int b, int c) { return std::uint64_t(a) | (std::uint64_t(b) << 1) | (std::uint64_t(c) << 2); };
  st.state.amps[idx(0, 1, 0)] = am;
  st.state.amps[idx(0, 1, 1)] = am;
  st.state.amps[idx(1, 0, 0)] = ap;
  st.state.amps[idx(1, 0, 1)] = ap;
  double phi = std::asin(std::min(1.0, 1.0 / (std::numbers::sqrt2 * std::cos(theta))));
  st.observables = {
      {kAxisX, kAxisZ},
      {{std::cos(phi), 0, std::sin(phi)}, {std::cos(phi), 0, -std::sin(phi)}},
      {kAxisX, {-1, 0, 0}},
  };
  return st;
}

/// theta in [pi/4, pi/2]: the same box with the roles of the second and
/// third party exchanged (state and measurements as printed for that range).
inline QuantumStrategy flat_box1b(double theta) {
  require(theta >= std::numbers::pi / 4 - 1e-12 && theta <= std::numbers::pi / 2 + 1e-12,
          errc::theta_out_of_domain, "flat_box1b: theta must lie in [pi/4, pi/2]");
  QuantumStrategy st;
  st.state = StateVector(3);
  double am = std::sqrt(1.0 - std::numbers::sqrt2 * std::cos(theta)) / 2.0;
  double ap = std::sqrt(1.0 + std::numbers::sqrt2 * std::cos(theta)) / 2.0;
  auto idx = [](int a, int b, int c) { return std::uint64_t(a) | (std::uint64_t(b) << 1) | (std::uint64_t(c) << 2); };
  st.state.amps[idx(0, 0, 1)] = am;
  st.state.amps[idx(0, 1, 1)] = am;
  st.state.amps[idx(1, 0, 0)] = ap;
  st.state.amps[idx(1, 1, 0)] = ap;
  // the printed arcsin(sec theta / sqrt2) leaves the domain here; the
  // B<->C-swapped construction requires csc instead (verified directly)
  double phi = std::asin(std::min(1.0, 1.0 / (std::numbers::sqrt2 * std::sin(theta))));
  st.observables = {
      {kAxisX, kAxisZ},
      {kAxisX, {-1, 0, 0}},
      {{std::cos(phi), 0, std::sin(phi)}, {std::cos(phi), 0, -std::sin(phi)}},
  };
  return st;
}

/// x-y plane box on |chi>, valid for any theta in [0, pi/2].
inline QuantumStrategy flat_box2(double theta) {
  require(theta >= -1e-12 && theta <= std::numbers::pi / 2 + 1e-12, errc::theta_out_of_domain,
          "flat_box2: theta must lie in [0, pi/2]");
  QuantumStrategy st;
  st.state = StateVector(3);
  auto idx = [](int a, int b, int c) { return std::uint64_t(a) | (std::uint64_t(b) << 1) | (std::uint64_t(c) << 2); };
  const double r2 = 1.0 / std::numbers::sqrt2;
  st.state.amps[idx(0, 0, 1)] = r2 * std::cos(theta);
  st.state.amps[idx(0, 1, 0)] = r2 * std::sin(theta);
  st.state.amps[idx(1, 1, 1)] = r2;
  const Vec3 xy_plus{r2, r2, 0}, xy_minus{r2, -r2, 0};
  st.observables = {
      {kAxisX, kAxisY},
      {xy_plus, xy_minus},
      {xy_plus, xy_minus},
  };
  return st;
}

/// CHSH variant used by the flat-region analysis:
/// A1B1 + A1B2 - A2B1 + A2B2.
inline CorrelationExpression chsh_pm() {
  CorrelationExpression e({2, 2}, "chsh_pm");
  e.at({0, 0}) = 1;
  e.at({0, 1}) = 1;
  e.at({1, 0}) = -1;
  e.at({1, 1}) = 1;
  return e;
}

struct FlatRegionPoint {
  double theta = 0;
  double box1_objective = 0, box2_objective = 0;
  double box1_chsh_ab = 0, box1_chsh_ac = 0;
  double box2_chsh_ab = 0, box2_chsh_ac = 0;
  double a1b1_box1 = 0, a1b1_box2 = 0;
  bool objectives_match = false;
  bool distinct = false;
};

inline FlatRegionPoint verify_flat_region_point(double theta, double tol = 1e-9) {
  FlatRegionPoint p;
  p.theta = theta;
  QuantumStrategy b1 =
      theta <= std::numbers::pi / 4 + 1e-15 ? flat_box1(theta) : flat_box1b(theta);
  QuantumStrategy b2 = flat_box2(theta);
  CorrelationExpression c = chsh_pm();
  p.box1_chsh_ab = bell_value(c, b1, {0, 1});
  p.box1_chsh_ac = bell_value(c, b1, {0, 2});
  p.box2_chsh_ab = bell_value(c, b2, {0, 1});
  p.box2_chsh_ac = bell_value(c, b2, {0, 2});
  p.box1_objective = std::cos(theta) * p.box1_chsh_ab + std::sin(theta) * p.box1_chsh_ac;
  p.box2_objective = std::cos(theta) * p.box2_chsh_ab + std::sin(theta) * p.box2_chsh_ac;
  const double target = 2.0 * std::numbers::sqrt2;
  p.objectives_match =
      std::abs(p.box1_objective - target) < tol && std::abs(p.box2_objective - target) < tol;

  CorrelationExpression a1b1({2, 2}, "a1b1");
  a1b1.at({0, 0}) = 1;
  p.a1b1_box1 = bell_value(a1b1, b1, {0, 1});
  p.a1b1_box2 = bell_value(a1b1, b2, {0, 1});
  p.distinct = std::abs(p.a1b1_box1 - p.a1b1_box2) > 0.1;
  return p;
}

// ---------------------------------------------------------------------------
// Ladder operator sets and the two-register bilinear maximum.

/// S_1 = {X, Z}; S_{2k+1} = S_{2k-1} tensor {IX, IZ, XI, ZI}. Only letters
/// from {I, X, Z} occur. |S_{2n-1}| = 2 * 4^{n-1}.
inline std::vector<PauliString> ladder_s_set(int n) {
  require(n >= 1 && n <= 6, errc::n_out_of_range, "ladder_s_set: n must be in 1..6");
  std::vector<std::string> labels = {"X", "Z"};
  static const char* steps[4] = {"IX", "IZ", "XI", "ZI"};
  for (int k = 2; k <= n; ++k) {
    std::vector<std::string> next;
    next.reserve(labels.size() * 4);
    for (const auto& base : labels)
      for (const auto* ext : steps) next.push_back(base + ext);
    labels = std::move(next);
  }
  std::vector<PauliString> ops;
  ops.reserve(labels.size());
  for (const auto& l : labels) ops.push_back(parse_label(l));
  return ops;
}

/// max over psi1, psi2 of sum_k |<psi1| M_k |psi2>|^2 by alternating
/// top-eigenvector steps; the best over the given restarts is returned.
inline double bilinear_pair_max_paulis(const std::vector<PauliString>& ops, int restarts,
                                       std::uint64_t master_seed, int max_iters = 300) {
  const int nq = ops.front().n_qubits();
  require(nq <= 10, errc::too_large, "bilinear_pair_max: operator register too large");
  auto apply_op = [&](const PauliString& p, const StateVector& in) {
    StateVector out = in;
    static const cplx iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx ph = iphase[p.phase_exp()];
    for (std::uint64_t t = 0; t < in.dim(); ++t) {
      double sign = (std::popcount(p.z_bits() & t) & 1) ? -1.0 : 1.0;
      out.amps[t ^ p.x_bits()] = ph * sign * in.amps[t];
    }
    return out;
  };

  double best = 0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(Rng::derive(master_seed, static_cast<std::uint64_t>(r)));
    StateVector psi1 = StateVector::random(nq, rng);
    StateVector psi2 = StateVector::random(nq, rng);
    double prev = -1;
    for (int it = 0; it < max_iters; ++it) {
      // psi1 <- top eigenvector of sum_k M_k |psi2><psi2| M_k
      StateVector acc(nq);
      double val = 0;
      for (const auto& p : ops) {
        StateVector mp = apply_op(p, psi2);
        cplx c = inner(psi1, mp);
        val += std::norm(c);
        for (std::size_t i = 0; i < acc.dim(); ++i) acc.amps[i] += std::conj(c) * mp.amps[i];
      }
      double nn = std::sqrt(acc.norm2());
      if (nn > 1e-14) {
        for (auto& a : acc.amps) a /= nn;
        psi1 = acc;
      }
      std::swap(psi1, psi2);  // alternate roles
      if (std::abs(val - prev) < 1e-13 * (std::abs(val) + 1)) break;
      prev = val;
    }
    // final value
    double val = 0;
    for (const auto& p : ops) {
      StateVector mp = apply_op(p, psi2);
      val += std::norm(inner(psi1, mp));
    }
    best = std::max(best, val);
  }
  return best;
}

inline double ladder_bilinear_max(int n, int restarts = 50, std::uint64_t master_seed = 1) {
  require(n >= 1 && n <= 3, errc::too_large, "ladder_bilinear_max: n must be in 1..3");
  return bilinear_pair_max_paulis(ladder_s_set(n), restarts, master_seed);
}

/// Dense-matrix variants used to exercise the vector-pair reduction on
/// arbitrary Hermitian families.
inline double bilinear_pair_max_dense(const std::vector<Mat>& ops, int restarts,
                                      std::uint64_t master_seed, int max_iters = 300) {
  const int dim = ops.front().n;
  auto apply_m = [&](const Mat& m, const std::vector<cplx>& v) {
    std::vector<cplx> out(dim, cplx(0, 0));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out[i] += m(i, j) * v[j];
    return out;
  };
  auto dotc = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s(0, 0);
    for (int i = 0; i < dim; ++i) s += std::conj(a[i]) * b[i];
    return s;
  };
  auto normalize = [&](std::vector<cplx>& v) {
    double n2 = 0;
    for (auto& c : v) n2 += std::norm(c);
    double n = std::sqrt(n2);
    for (auto& c : v) c /= n;
  };

  double best = 0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(Rng::derive(master_seed, static_cast<std::uint64_t>(r)));
    std::vector<cplx> v1(dim), v2(dim);
    for (auto& c : v1) c = cplx(rng.normal(), rng.normal());
    for (auto& c : v2) c = cplx(rng.normal(), rng.normal());
    normalize(v1);
    normalize(v2);
    double prev = -1;
    for (int it = 0; it < max_iters; ++it) {
      std::vector<cplx> acc(dim, cplx(0, 0));
      double val = 0;
      for (const auto& m : ops) {
        auto mv = apply_m(m, v2);
        cplx c = dotc(v1, mv);
        val += std::norm(c);
        for (int i = 0; i < dim; ++i) acc[i] += std::conj(c) * mv[i];
      }
      double nn = 0;
      for (auto& c : acc) nn += std::norm(c);
      if (nn > 1e-28) {
        normalize(acc);
        v1 = acc;
      }
      std::swap(v1, v2);
      if (std::abs(val - prev) < 1e-13 * (std::abs(val) + 1)) break;
      prev = val;
    }
    double val = 0;
    for (const auto& m : ops) val += std::norm(dotc(v1, apply_m(m, v2)));
    best = std::max(best, val);
  }
  return best;
}

/// Four-vector form max over phi1..phi4 of Re sum_k <phi1|M_k|phi2><phi3|M_k|phi4>,
/// by cyclic coordinate maximization.
inline double bilinear_quad_max_dense(const std::vector<Mat>& ops, int restarts,
                                      std::uint64_t master_seed, int max_iters = 400) {
  const int dim = ops.front().n;
  auto apply_m = [&](const Mat& m, const std::vector<cplx>& v) {
    std::vector<cplx> out(dim, cplx(0, 0));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out[i] += m(i, j) * v[j];
    return out;
  };
  auto dotc = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s(0, 0);
    for (int i = 0; i < dim; ++i) s += std::conj(a[i]) * b[i];
    return s;
  };
  auto normalize = [&](std::vector<cplx>& v) {
    double n2 = 0;
    for (auto& c : v) n2 += std::norm(c);
    double n = std::sqrt(n2);
    if (n > 1e-14)
      for (auto& c : v) c /= n;
  };

  double best = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng(Rng::derive(master_seed, static_cast<std::uint64_t>(r)));
    std::array<std::vector<cplx>, 4> phi;
    for (auto& v : phi) {
      v.resize(dim);
      for (auto& c : v) c = cplx(rng.normal(), rng.normal());
      normalize(v);
    }
    double val = 0;
    for (int it = 0; it < max_iters; ++it) {
      // phi1 <- argmax Re <phi1| w>, w = sum_k conj(c_k) ... proceed cyclically
      for (int which = 0; which < 4; ++which) {
        std::vector<cplx> w(dim, cplx(0, 0));
        for (const auto& m : ops) {
          switch (which) {
            case 0: {
              cplx c = dotc(phi[2], apply_m(m, phi[3]));
              auto mv = apply_m(m, phi[1]);
              for (int i = 0; i < dim; ++i) w[i] += c * mv[i];
              break;
            }
            case 1: {
              cplx c = dotc(phi[2], apply_m(m, phi[3]));
              auto mv = apply_m(m, phi[0]);  // M Hermitian
              for (int i = 0; i < dim; ++i) w[i] += std::conj(c) * mv[i];
              break;
            }
            case 2: {
              cplx c = dotc(phi[0], apply_m(m, phi[1]));
              auto mv = apply_m(m, phi[3]);
              for (int i = 0; i < dim; ++i) w[i] += c * mv[i];
              break;
            }
            default: {
              cplx c = dotc(phi[0], apply_m(m, phi[1]));
              auto mv = apply_m(m, phi[2]);
              for (int i = 0; i < dim; ++i) w[i] += std::conj(c) * mv[i];
              break;
            }
          }
        }
        normalize(w);
        double n2 = 0;
        for (auto& c : w) n2 += std::norm(c);
        if (n2 > 0.5) {
          if (which == 1 || which == 3) {  // ket updates
            phi[which] = w;
          } else {
            phi[which] = w;
          }
        }
      }
      double cur = 0;
      for (const auto& m : ops)
        cur += (dotc(phi[0], apply_m(m, phi[1])) * dotc(phi[2], apply_m(m, phi[3]))).real();
      if (std::abs(cur - val) < 1e-13 * (std::abs(cur) + 1)) {
        val = cur;
        break;
      }
      val = cur;
    }
    best = std::max(best, val);
  }
  return best;
}

// ---------------------------------------------------------------------------
// GHZ strategies for the chain and multi-input Svetlichny families.

/// On GHZ_n with x-y plane observables at angles theta_i, the full
/// correlator equals cos(sum_i theta_i).
inline Vec3 xy_observable(double angle) { return {std::cos(angle), std::sin(angle), 0.0}; }

/// Phase table for parties before the last: alternating-sign linear ramp.
inline double svetlichny_ramp_angle(int n, int party, int x /*0-based*/, int m) {
  double s = ((party % 2 == 0) == (n % 2 == 0)) ? 1.0 : -1.0;
  return s * x * std::numbers::pi / m;
}

/// GHZ strategy for the multi-input Svetlichny tensor: ramp angles on the
/// first n-1 parties; the last party's angle per input is the phase that
/// maximizes that input's slice response (closed form via atan2). The
/// printed constant offset is off by pi/m, so the offsets are derived
/// rather than hard-coded.
inline QuantumStrategy ghz_svetlichny_strategy(int n, int m) {
  CorrelationExpression e = gen_svetlichny(n, m);
  QuantumStrategy st;
  st.state = StateVector::ghz(n);
  st.observables.assign(n, {});
  for (int i = 0; i + 1 < n; ++i)
    for (int x = 0; x < m; ++x)
      st.observables[i].push_back(xy_observable(svetlichny_ramp_angle(n, i, x, m)));

  // Last party: value = sum_{x_n} [P cos c + Q sin c], each x_n independent.
  std::vector<int> x;
  for (int xn = 0; xn < m; ++xn) {
    double P = 0, Q = 0;
    for (std::size_t idx = 0; idx < e.tuple_count(); ++idx) {
      e.unflatten(idx, x);
      if (x[n - 1] != xn) continue;
      double c = e.coeffs[idx];
      if (c == 0.0) continue;
      double s = 0;
      for (int i = 0; i + 1 < n; ++i) s += svetlichny_ramp_angle(n, i, x[i], m);
      P += c * std::cos(s);
      Q -= c * std::sin(s);
    }
    st.observables[n - 1].push_back(xy_observable(std::atan2(Q, P)));
  }
  return st;
}

/// GHZ_2 equatorial strategy for the two-party chain inequality; the second
/// party's common offset is the closed-form maximizer.
inline QuantumStrategy ghz_chain_strategy(int m) {
  return ghz_svetlichny_strategy(2, m);
}

/// Named strategies with an angle parameter.
inline QuantumStrategy named_strategy(const std::string& name, double theta = 0) {
  if (name == "flat1") return flat_box1(theta);
  if (name == "flat1b") return flat_box1b(theta);
  if (name == "flat2") return flat_box2(theta);
  fail(errc::unknown_preset, "named_strategy: unknown name " + name);
}

// ---------------------------------------------------------------------------
// Sum-of-squares identity behind the chain monogamy.

struct SosReport {
  double max_residual = 0;
  int blocks_checked = 0;
  bool pass = false;
};

/// Checks, as an 8x8 matrix identity for random qubit observables, that
///   2 sqrt2 I - cos(t) (CHSH block on A,B) - sin(t) (CHSH block on A,C)
/// equals (Q1^2 + Q2^2)/sqrt2 for every (j, l) block of the chain
/// decomposition. Positivity of each block follows.
inline SosReport verify_sos_chain(int m, double theta, int n_seeds, std::uint64_t master_seed = 7,
                                  double tol = 1e-9) {
  require(m % 2 == 0, errc::odd_m, "verify_sos_chain: m must be even");
  SosReport rep;
  const double ct = std::cos(theta), st = std::sin(theta);
  const Mat I2 = Mat::eye(2);
  const Mat I8 = Mat::eye(8);
  for (int seed_i = 0; seed_i < n_seeds; ++seed_i) {
    Rng rng(Rng::derive(master_seed, static_cast<std::uint64_t>(seed_i)));
    std::vector<Mat> A(m), B(m), C(m);
    for (int i = 0; i < m; ++i) {
      A[i] = bloch_mat(random_unit_vec3(rng));
      B[i] = bloch_mat(random_unit_vec3(rng));
      C[i] = bloch_mat(random_unit_vec3(rng));
    }
    for (int j = 1; j <= m / 2; ++j)
      for (int l = 1; l <= m / 2; ++l) {
        auto wrap = [&](int u) { return (u - 1) % m; };  // indices may exceed m
        const Mat& P = A[wrap(j + l - 1)];
        const Mat& Qm = A[wrap(j + m / 2 + l - 1)];
        const Mat& Bj = B[j - 1];
        const Mat& Bj2 = B[j + m / 2 - 1];
        const Mat& Cj = C[j - 1];
        const Mat& Cj2 = C[j + m / 2 - 1];

        Mat ab = kron(P, kron(Bj, I2)) + kron(P, kron(Bj2, I2)) + kron(Qm, kron(Bj2, I2)) -
                 kron(Qm, kron(Bj, I2));
        Mat ac = kron(P, kron(I2, Cj)) + kron(P, kron(I2, Cj2)) + kron(Qm, kron(I2, Cj2)) -
                 kron(Qm, kron(I2, Cj));
        Mat lhs = (2.0 * std::numbers::sqrt2) * I8 - ct * ab - st * ac;

        const double r2 = 1.0 / std::numbers::sqrt2;
        Mat S = r2 * (P + Qm);
        Mat D = r2 * (P - Qm);
        Mat q1 = I8 - ct * kron(S, kron(Bj2, I2)) - st * kron(D, kron(I2, Cj));
        Mat q2 = I8 - ct * kron(D, kron(Bj, I2)) - st * kron(S, kron(I2, Cj2));
        Mat rhs = r2 * (q1 * q1 + q2 * q2);

        rep.max_residual = std::max(rep.max_residual, max_abs(lhs - rhs));
        ++rep.blocks_checked;
      }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

/// Correlation between the first party's first observable and a symmetric
/// extra party ("the guesser"); P_guess = (1 + value) / 2.
inline double guessing_correlator(const QuantumStrategy& strat, int alice_qubit, int eve_qubit) {
  const auto& eve = strat.observables[eve_qubit];
  require(eve.size() >= 2, errc::shape_mismatch, "guesser needs two declared observables");
  require(std::abs(eve[0][0] - eve[1][0]) < 1e-12 && std::abs(eve[0][1] - eve[1][1]) < 1e-12 &&
              std::abs(eve[0][2] - eve[1][2]) < 1e-12,
          errc::shape_mismatch, "guesser observables must coincide");
  std::vector<const Vec3*> obs{&strat.observables[alice_qubit][0], &eve[0]};
  return correlator(strat.state, {alice_qubit, eve_qubit}, obs);
}

}  // namespace bellmono
