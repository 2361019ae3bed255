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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellmono/anticommutation.hpp"
#include "bellmono/common.hpp"
#include "bellmono/inequalities.hpp"
#include "bellmono/pauli.hpp"
#include "bellmono/quantum.hpp"

namespace bellmono {

struct Hypergraph {
  int n_vertices = 0;
  std::vector<std::vector<int>> edges;  // sorted-by-construction vertex lists

  void check() const {
    for (const auto& e : edges) {
      require(!e.empty(), errc::bad_input, "hypergraph: empty edge");
      for (int v : e)
        require(v >= 0 && v < n_vertices, errc::index_out_of_range, "hypergraph: bad vertex");
    }
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = i + 1; j < edges.size(); ++j)
        require(edges[i] != edges[j], errc::duplicate_operator, "hypergraph: duplicate edge");
  }
};

enum class Regime { quantum, nosignaling, classical };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::quantum: return "quantum";
    case Regime::nosignaling: return "nosignaling";
    default: return "classical";
  }
}

/// A trade-off relation over a qubit network: sum over hyperedges of
/// weight_e * <I>_e^exponent <= bound, with normalized (unit local bound)
/// per-edge expressions. `scale` is the local bound of the unnormalized
/// per-edge expression, so bound * scale^exponent is the bound as stated
/// for the unnormalized expressions when the scale is uniform.
struct TradeOffRelation {
  std::string name;
  Hypergraph hypergraph;
  std::vector<CorrelationExpression> edge_expressions;  // normalized, one per edge
  std::vector<int> edge_weights;                        // multiplicities, default 1
  int exponent = 2;
  double bound = 0;
  Regime regime = Regime::quantum;
  std::vector<std::array<char, 2>> planes;  // per-qubit letter pair, e.g. {X,Z}
  std::optional<Grouping> constructive_groups;
  double scale = 1.0;

  double unnormalized_bound() const {
    return bound * (exponent == 2 ? scale * scale : scale);
  }
};

struct EdgeOp {
  int edge = 0;
  int copy = 0;  // weight-multiplicity copy index
  PauliString op;
};

/// One Pauli string per correlation-tensor element of each edge, in the
/// declared per-qubit planes; edges with weight w contribute w copies.
inline std::vector<EdgeOp> operators_of(const TradeOffRelation& rel) {
  require(rel.exponent == 2, errc::wrong_exponent, "operators_of: defined for squared relations");
  std::vector<EdgeOp> out;
  const int nq = rel.hypergraph.n_vertices;
  for (std::size_t ei = 0; ei < rel.hypergraph.edges.size(); ++ei) {
    const auto& edge = rel.hypergraph.edges[ei];
    const int k = static_cast<int>(edge.size());
    for (int copy = 0; copy < rel.edge_weights[ei]; ++copy) {
      for (int bits = 0; bits < (1 << k); ++bits) {
        std::string label(nq, 'I');
        for (int i = 0; i < k; ++i) label[edge[i]] = rel.planes[edge[i]][(bits >> i) & 1];
        out.push_back({static_cast<int>(ei), copy, parse_label(label)});
      }
    }
  }
  return out;
}

struct CertifyResult {
  enum class Status { certified, proven_impossible, inconclusive } status =
      Status::inconclusive;
  std::optional<CliqueCoverCertificate> certificate;
  std::vector<EdgeOp> operators;
  std::uint64_t nodes_visited = 0;
  std::string note;
};

/// Attempts a cover of the relation's operators into `bound` anti-commuting
/// groups. Uses the preset's constructive grouping when available, otherwise
/// greedy search with an exhaustive fallback.
inline CertifyResult certify_by_complementarity(const TradeOffRelation& rel) {
  require(rel.exponent == 2, errc::wrong_exponent, "certify: defined for squared relations");
  CertifyResult res;
  res.operators = operators_of(rel);
  std::vector<PauliString> ops;
  ops.reserve(res.operators.size());
  for (const auto& eo : res.operators) ops.push_back(eo.op);
  ACGraph graph = build_graph_multiset(ops);

  const int n_groups = static_cast<int>(rel.bound + 0.5);
  require(std::abs(rel.bound - n_groups) < 1e-12, errc::bad_input,
          "certify: normalized bound must be integral");
  if (static_cast<int>(ops.size()) % n_groups != 0) {
    res.note = "operator count not divisible by the group count";
    return res;
  }
  const int group_size = static_cast<int>(ops.size()) / n_groups;

  if (rel.constructive_groups) {
    CliqueCoverCertificate cert;
    std::vector<bool> used(ops.size(), false);
    for (const auto& g : *rel.constructive_groups) {
      std::vector<int> idx;
      for (const auto& op : g) {
        int found = -1;
        for (std::size_t i = 0; i < ops.size(); ++i)
          if (!used[i] && ops[i].same_letters(op)) {
            found = static_cast<int>(i);
            break;
          }
        require(found >= 0, errc::size_mismatch,
                "certify: constructive group operator not among the relation operators");
        used[found] = true;
        idx.push_back(found);
      }
      cert.groups.push_back(std::move(idx));
    }
    auto rep = verify_certificate(graph, cert);
    require(rep.valid, errc::size_mismatch, "certify: constructive grouping failed: " + rep.reason);
    res.status = CertifyResult::Status::certified;
    res.certificate = std::move(cert);
    return res;
  }

  if (auto cert = greedy_cover(graph, group_size)) {
    if (cert->group_count() == n_groups && verify_certificate(graph, *cert).valid) {
      res.status = CertifyResult::Status::certified;
      res.certificate = std::move(cert);
      return res;
    }
  }
  if (graph.size() > 64) {
    res.note = "greedy search failed and the graph is too large for exhaustive search";
    return res;
  }
  auto search = exact_cover(graph, n_groups, group_size);
  res.nodes_visited = search.nodes_visited;
  if (search.certificate) {
    res.status = CertifyResult::Status::certified;
    res.certificate = std::move(search.certificate);
  } else {
    res.status = CertifyResult::Status::proven_impossible;
    res.note = "exhaustive search proved no uniform anti-commuting cover exists";
  }
  return res;
}

// ---------------------------------------------------------------------------
// Star-network grouping (mixed edge sizes) and its variant with a symmetric
// extra party.

/// Anti-commuting grouping of the star network of 2n-1 qubits (hub 0, one
/// path of nodes 1,3,5,.. and one of 2,4,6,..). The first set takes X on the
/// hub and X-ramps ending in Z down each path; the others are generated by
/// letter interchanges at the hub and at each non-terminal level pair, with
/// operators kept at their first occurrence only.
inline Grouping star_grouping(int n) {
  require(n >= 2 && n <= 8, errc::n_out_of_range, "star_grouping: n must be in 2..8");
  const int nq = 2 * n - 1;
  // base rows as (qubit, letter) lists; top path nodes: 1,3,..; bottom: 2,4,..
  auto base_rows = [&](bool top) {
    std::vector<std::vector<std::pair<int, char>>> rows;
    char hub = top ? 'X' : 'Z';
    auto node = [&](int level) { return top ? 2 * level - 1 : 2 * level; };
    // full ramp: X everywhere down the path
    std::vector<std::pair<int, char>> full{{0, hub}};
    for (int lv = 1; lv <= n - 1; ++lv) full.emplace_back(node(lv), 'X');
    rows.push_back(full);
    // depth-d rows: X above, Z at depth d
    for (int d = n - 1; d >= 1; --d) {
      std::vector<std::pair<int, char>> row{{0, hub}};
      for (int lv = 1; lv < d; ++lv) row.emplace_back(node(lv), 'X');
      row.emplace_back(node(d), 'Z');
      rows.push_back(row);
    }
    return rows;
  };

  auto rows_top = base_rows(true);
  auto rows_bot = base_rows(false);

  auto apply_mask = [&](const std::vector<std::pair<int, char>>& row, unsigned mask) {
    std::string label(nq, 'I');
    for (auto [q, letter] : row) {
      bool swap = false;
      if (q == 0) {
        swap = mask & 1u;
      } else {
        int level = (q + 1) / 2;  // q = 2*level-1 or 2*level
        if (level <= n - 2) swap = (mask >> level) & 1u;
      }
      label[q] = swap ? (letter == 'X' ? 'Z' : 'X') : letter;
    }
    return label;
  };

  Grouping out;
  std::vector<std::string> seen;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<PauliString> group;
    for (const auto& rows : {rows_top, rows_bot}) {
      for (const auto& row : rows) {
        std::string label = apply_mask(row, mask);
        if (std::find(seen.begin(), seen.end(), label) != seen.end()) continue;
        seen.push_back(label);
        group.push_back(parse_label(label));
      }
    }
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b)
        require(anticommute(group[a], group[b]), errc::non_transitive_permutations,
                "star_grouping: commuting pair inside a group");
    out.push_back(std::move(group));
  }
  return out;
}

/// The four 5-element sets certifying the relation with a symmetric fourth
/// party coupled to the first one (that edge carries weight 2).
inline Grouping star_eve_grouping() {
  Grouping out;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      char l1 = s1 ? 'Z' : 'X';
      char o1 = s1 ? 'X' : 'Z';
      char lb = s2 ? 'Z' : 'X';
      char ob = s2 ? 'X' : 'Z';
      std::vector<PauliString> group{
          parse_label(std::string() + l1 + lb + 'X' + 'I'),
          parse_label(std::string() + l1 + lb + 'Z' + 'I'),
          parse_label(std::string() + l1 + ob + 'I' + 'I'),
          parse_label(std::string() + o1 + 'I' + 'I' + 'X'),
          parse_label(std::string() + o1 + 'I' + 'I' + 'Z'),
      };
      out.push_back(std::move(group));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Preset relations.

namespace detail {

inline CorrelationExpression normalized_mk(int k) {
  // M_k already has unit local bound; normalized() also guards that.
  return normalized(mermin_klyshko(k));
}

inline Grouping triangle_grouping() {
  return Grouping{
      {parse_label("XXI"), parse_label("XZI"), parse_label("ZIX"), parse_label("ZIZ")},
      {parse_label("XIX"), parse_label("XIZ"), parse_label("ZXI"), parse_label("ZZI")},
  };
}

/// 4x8 anti-commuting cover of the 32 square-network tensor elements in the
/// x-y plane, with the given 8-element group forced to appear first.
inline Grouping square_xy_grouping_with_anchor() {
  const std::vector<std::string> anchor_labels{"XXXI", "YYYI", "XYIX", "YXIY",
                                               "XIYY", "YIXX", "IXYX", "IYXY"};
  std::vector<std::vector<int>> edges{{0, 1, 2}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1}};
  std::vector<PauliString> ops;
  for (const auto& e : edges)
    for (int bits = 0; bits < 8; ++bits) {
      std::string label(4, 'I');
      for (int i = 0; i < 3; ++i) label[e[i]] = ((bits >> i) & 1) ? 'Y' : 'X';
      ops.push_back(parse_label(label));
    }
  std::vector<PauliString> anchor;
  for (const auto& l : anchor_labels) anchor.push_back(parse_label(l));

  std::vector<PauliString> rest;
  for (const auto& op : ops) {
    bool in_anchor = false;
    for (const auto& a : anchor)
      if (a.same_letters(op)) in_anchor = true;
    if (!in_anchor) rest.push_back(op);
  }
  require(rest.size() == 24, errc::size_mismatch, "square grouping: anchor not in operator set");
  ACGraph g = build_graph(rest);
  auto res = exact_cover(g, 3, 8);
  require(res.certificate.has_value(), errc::size_mismatch,
          "square grouping: no completion of the anchored cover");
  Grouping out{anchor};
  for (const auto& idx : res.certificate->groups) {
    std::vector<PauliString> grp;
    for (int i : idx) grp.push_back(rest[i]);
    out.push_back(std::move(grp));
  }
  return out;
}

inline Grouping tree7_grouping() {
  Grouping tri = triangle_grouping();
  Grouping outer{{parse_label("X"), parse_label("Z")}};
  return iterative_grouping(outer, {tri, tri});
}

inline Grouping nine_grouping() {
  Grouping sq = square_xy_grouping_with_anchor();
  Grouping outer{{parse_label("X"), parse_label("Y")}};
  return iterative_grouping(outer, {sq, sq});
}

inline Grouping tree15_grouping() {
  Grouping t7 = tree7_grouping();
  Grouping outer{{parse_label("X"), parse_label("Z")}};
  return iterative_grouping(outer, {t7, t7});
}

}  // namespace detail

/// Builds a named preset relation. Recognized names: triangle, square4,
/// sixqubit, tree7, tree15, nine, ladder<n>, star<n>, chsh-mermin,
/// chsh-mermin-eve, gen-ladder-chsh, gen-ladder-mermin, gen-ladder-chain4.
inline TradeOffRelation preset(const std::string& name) {
  TradeOffRelation rel;
  rel.name = name;

  auto uniform_planes = [&](int nq, char a, char b) {
    rel.planes.assign(nq, {a, b});
  };

  if (name == "triangle" || name == "ladder2") {
    rel.hypergraph = {3, {{0, 1}, {0, 2}}};
    rel.edge_expressions = {normalized(chsh()), normalized(chsh())};
    rel.edge_weights = {1, 1};
    rel.bound = 2;
    rel.scale = 2;
    uniform_planes(3, 'X', 'Z');
    return rel;
  }
  if (name == "square4") {
    rel.hypergraph = {4, {{0, 1, 2}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1}}};
    rel.edge_expressions.assign(4, normalized(mermin3()));
    rel.edge_weights.assign(4, 1);
    rel.bound = 4;
    rel.scale = 2;
    uniform_planes(4, 'X', 'Z');
    return rel;
  }
  if (name == "sixqubit") {
    rel.hypergraph = {6, {{0, 1, 2}, {2, 3, 4}, {0, 4, 5}, {0, 2, 4}}};
    rel.edge_expressions.assign(4, normalized(mermin3()));
    rel.edge_weights.assign(4, 1);
    rel.bound = 4;
    rel.scale = 2;
    uniform_planes(6, 'X', 'Z');
    return rel;
  }
  if (name == "tree7") {
    rel.hypergraph = {7, {{0, 1, 2}, {0, 1, 3}, {0, 4, 5}, {0, 4, 6}}};
    rel.edge_expressions.assign(4, normalized(mermin3()));
    rel.edge_weights.assign(4, 1);
    rel.bound = 4;
    rel.scale = 2;
    uniform_planes(7, 'X', 'Z');
    rel.constructive_groups = detail::tree7_grouping();
    return rel;
  }
  if (name == "tree15") {
    rel.hypergraph = {15,
                      {{0, 1, 2, 3},
                       {0, 1, 2, 4},
                       {0, 1, 5, 6},
                       {0, 1, 5, 7},
                       {0, 8, 9, 10},
                       {0, 8, 9, 11},
                       {0, 8, 12, 13},
                       {0, 8, 12, 14}}};
    rel.edge_expressions.assign(8, detail::normalized_mk(4));
    rel.edge_weights.assign(8, 1);
    rel.bound = 8;
    rel.scale = local_bound(mermin_klyshko(4));
    uniform_planes(15, 'X', 'Z');
    rel.constructive_groups = detail::tree15_grouping();
    return rel;
  }
  if (name == "nine") {
    rel.hypergraph = {9,
                      {{0, 1, 2, 3},
                       {0, 2, 3, 4},
                       {0, 3, 4, 1},
                       {0, 4, 1, 2},
                       {0, 5, 6, 7},
                       {0, 6, 7, 8},
                       {0, 7, 8, 5},
                       {0, 8, 5, 6}}};
    rel.edge_expressions.assign(8, detail::normalized_mk(4));
    rel.edge_weights.assign(8, 1);
    rel.bound = 8;
    rel.scale = local_bound(mermin_klyshko(4));
    uniform_planes(9, 'X', 'Y');
    rel.constructive_groups = detail::nine_grouping();
    return rel;
  }
  if (name.rfind("ladder", 0) == 0) {
    int n = std::stoi(name.substr(6));
    require(n >= 2 && n <= 6, errc::unknown_preset, "ladder preset: n out of range");
    const int nq = 2 * n - 1;
    Hypergraph h;
    h.n_vertices = nq;
    for (int bits = 0; bits < (1 << (n - 1)); ++bits) {
      std::vector<int> edge{0};
      for (int j = 1; j <= n - 1; ++j) edge.push_back(2 * j - 1 + ((bits >> (j - 1)) & 1));
      h.edges.push_back(edge);
    }
    rel.hypergraph = h;
    CorrelationExpression e = n == 3 ? normalized(mermin3()) : detail::normalized_mk(n);
    rel.edge_expressions.assign(h.edges.size(), e);
    rel.edge_weights.assign(h.edges.size(), 1);
    rel.bound = static_cast<double>(1 << (n - 1));
    rel.scale = n == 3 ? 2.0 : local_bound(mermin_klyshko(n));
    uniform_planes(nq, 'X', 'Z');
    return rel;
  }
  if (name == "chsh-mermin" || name.rfind("star", 0) == 0) {
    int n = name == "chsh-mermin" ? 3 : std::stoi(name.substr(4));
    require(n >= 2 && n <= 6, errc::unknown_preset, "star preset: n out of range");
    const int nq = 2 * n - 1;
    Hypergraph h;
    h.n_vertices = nq;
    for (int k = 2; k <= n; ++k) {
      std::vector<int> top{0}, bot{0};
      for (int lv = 1; lv <= k - 1; ++lv) {
        top.push_back(2 * lv - 1);
        bot.push_back(2 * lv);
      }
      h.edges.push_back(top);
      h.edges.push_back(bot);
    }
    rel.hypergraph = h;
    for (int k = 2; k <= n; ++k) {
      CorrelationExpression e = k == 2   ? normalized(chsh())
                                : k == 3 ? normalized(mermin3())
                                         : detail::normalized_mk(k);
      rel.edge_expressions.push_back(e);
      rel.edge_expressions.push_back(e);
    }
    rel.edge_weights.assign(h.edges.size(), 1);
    rel.bound = static_cast<double>(1 << (n - 1));
    rel.scale = 2;  // uniform only for n <= 3; reports use it for chsh-mermin
    uniform_planes(nq, 'X', 'Z');
    rel.constructive_groups = star_grouping(n);
    return rel;
  }
  if (name == "chsh-mermin-eve") {
    rel.hypergraph = {4, {{0, 1, 2}, {0, 1}, {0, 3}}};
    rel.edge_expressions = {normalized(mermin3()), normalized(chsh()), normalized(chsh())};
    rel.edge_weights = {1, 1, 2};
    rel.bound = 4;
    rel.scale = 2;
    uniform_planes(4, 'X', 'Z');
    rel.constructive_groups = star_eve_grouping();
    return rel;
  }
  if (name == "gen-ladder-chsh") {
    rel.hypergraph = {3, {{0, 1}, {0, 2}}};
    rel.edge_expressions = {normalized(chsh()), normalized(chsh())};
    rel.edge_weights = {1, 1};
    rel.exponent = 1;
    rel.bound = 2;  // normalized; unnormalized 4
    rel.scale = 2;
    rel.regime = Regime::nosignaling;
    uniform_planes(3, 'X', 'Z');
    return rel;
  }
  if (name == "gen-ladder-mermin") {
    rel.hypergraph = {5, {{0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4}}};
    rel.edge_expressions.assign(4, normalized(mermin3()));
    rel.edge_weights.assign(4, 1);
    rel.exponent = 1;
    rel.bound = 4;  // normalized; unnormalized 8
    rel.scale = 2;
    rel.regime = Regime::nosignaling;
    uniform_planes(5, 'X', 'Z');
    return rel;
  }
  if (name == "gen-ladder-chain4") {
    rel.hypergraph = {3, {{0, 1}, {0, 2}}};
    rel.edge_expressions = {normalized(chain(4)), normalized(chain(4))};
    rel.edge_weights = {1, 1};
    rel.exponent = 1;
    rel.bound = 2;  // normalized; unnormalized 16
    rel.scale = 8;
    rel.regime = Regime::nosignaling;
    uniform_planes(3, 'X', 'Z');
    return rel;
  }
  fail(errc::unknown_preset, "unknown preset: " + name);
}

// ---------------------------------------------------------------------------
// Spherical tightness state.

/// |psi> = (1/sqrt2) sum_e alpha_e |e> + (1/sqrt2)|1...1>, with |e> having
/// zeros exactly at the edge's qubits. Requires odd uniform edge size; in
/// the x-y plane each edge then satisfies <I>_e^2 = 2^{k-1} alpha_e^2.
inline StateVector spherical_tightness_state(const Hypergraph& h,
                                             const std::vector<double>& weights) {
  h.check();
  require(weights.size() == h.edges.size(), errc::size_mismatch,
          "spherical_tightness_state: one weight per edge");
  const int k = static_cast<int>(h.edges.front().size());
  require(k % 2 == 1, errc::even_k, "spherical_tightness_state: edge size must be odd");
  for (const auto& e : h.edges)
    require(static_cast<int>(e.size()) == k, errc::size_mismatch,
            "spherical_tightness_state: edges must have uniform size");
  double s2 = 0;
  for (double a : weights) {
    require(a >= 0, errc::bad_normalization, "weights must be nonnegative");
    s2 += a * a;
  }
  require(std::abs(s2 - 1.0) < 1e-12, errc::bad_normalization,
          "spherical_tightness_state: weights must have unit square sum");

  StateVector psi(h.n_vertices);
  const std::uint64_t ones = psi.dim() - 1;
  const double r2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t ei = 0; ei < h.edges.size(); ++ei) {
    std::uint64_t idx = ones;
    for (int v : h.edges[ei]) idx &= ~(1ULL << v);
    psi.amps[idx] += r2 * weights[ei];
  }
  psi.amps[ones] += r2;
  return psi;
}

inline std::array<Vec3, 2> plane_axes(const std::array<char, 2>& letters) {
  auto axis = [](char c) -> Vec3 {
    switch (c) {
      case 'X': return kAxisX;
      case 'Y': return kAxisY;
      case 'Z': return kAxisZ;
      default: fail(errc::invalid_character, "plane_axes: bad letter");
    }
  };
  return {axis(letters[0]), axis(letters[1])};
}

/// Sum over edges of weight * (sum of squared tensor entries) for a state,
/// in the relation's declared planes.
inline double relation_tensor_sum(const TradeOffRelation& rel, const StateVector& psi) {
  double total = 0;
  for (std::size_t ei = 0; ei < rel.hypergraph.edges.size(); ++ei) {
    const auto& edge = rel.hypergraph.edges[ei];
    std::vector<std::array<Vec3, 2>> axes;
    for (int v : edge) axes.push_back(plane_axes(rel.planes[v]));
    total += rel.edge_weights[ei] * edge_value_squared(psi, edge, axes);
  }
  return total;
}

/// Sum over edges of weight * bell_value^exponent for a strategy on the
/// network's qubits.
inline double relation_value(const TradeOffRelation& rel, const QuantumStrategy& st) {
  double total = 0;
  for (std::size_t ei = 0; ei < rel.hypergraph.edges.size(); ++ei) {
    double v = bell_value(rel.edge_expressions[ei], st, rel.hypergraph.edges[ei]);
    total += rel.edge_weights[ei] * (rel.exponent == 2 ? v * v : v);
  }
  return total;
}

/// Weighted-direction seesaw scan point.
struct ScanPoint {
  std::vector<double> weights;
  std::vector<double> edge_values;
  double sum_squares = 0;
  std::uint64_t seed = 0;
};

inline ScanPoint scan_direction(const TradeOffRelation& rel, const std::vector<double>& weights,
                                const SeesawOptions& opt) {
  require(rel.exponent == 2, errc::wrong_exponent, "scan: defined for squared relations");
  std::vector<WeightedEdgeObjective> objs;
  for (std::size_t ei = 0; ei < rel.hypergraph.edges.size(); ++ei)
    objs.push_back({&rel.edge_expressions[ei], rel.hypergraph.edges[ei], weights[ei]});
  auto res = seesaw_maximize(rel.hypergraph.n_vertices,
                             std::vector<int>(rel.hypergraph.n_vertices, 2), objs, opt);
  ScanPoint p;
  p.weights = weights;
  p.edge_values = res.edge_values;
  for (double v : res.edge_values) p.sum_squares += v * v;
  p.seed = res.best_seed;
  return p;
}

/// Boundary scan: for two-edge relations the directions are an equally
/// spaced angle grid on [0, pi/2]; otherwise uniform plus one-hot plus
/// seeded random unit directions up to `grid` points.
inline std::vector<ScanPoint> boundary_scan(const TradeOffRelation& rel, int grid,
                                            const SeesawOptions& opt) {
  const int m = static_cast<int>(rel.hypergraph.edges.size());
  std::vector<std::vector<double>> dirs;
  if (m == 2) {
    for (int i = 0; i < grid; ++i) {
      double theta = (std::numbers::pi / 2) * (grid == 1 ? 0.0 : double(i) / (grid - 1));
      dirs.push_back({std::cos(theta), std::sin(theta)});
    }
  } else {
    dirs.push_back(std::vector<double>(m, 1.0 / std::sqrt(double(m))));
    for (int e = 0; e < m && static_cast<int>(dirs.size()) < grid; ++e) {
      std::vector<double> d(m, 0.0);
      d[e] = 1.0;
      dirs.push_back(d);
    }
    Rng rng(Rng::derive(opt.master_seed, 0xd1e5));
    while (static_cast<int>(dirs.size()) < grid) {
      std::vector<double> d(m);
      double n2 = 0;
      for (auto& x : d) {
        x = std::abs(rng.normal());
        n2 += x * x;
      }
      for (auto& x : d) x /= std::sqrt(n2);
      dirs.push_back(d);
    }
  }
  std::vector<ScanPoint> points;
  SeesawOptions o = opt;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    o.master_seed = Rng::derive(opt.master_seed, 0x5ca0 + i);
    points.push_back(scan_direction(rel, dirs[i], o));
  }
  return points;
}

}  // namespace bellmono
