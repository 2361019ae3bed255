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
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellmono/common.hpp"
#include "bellmono/pauli.hpp"

namespace bellmono {

/// Graph over Pauli operators with an edge joining anti-commuting pairs.
/// Adjacency rows are dynamic bitsets so large operator lists (e.g. 128
/// tensor elements) are representable; the exhaustive searches below are
/// restricted to 64 vertices.
struct ACGraph {
  std::vector<PauliString> vertices;
  int words = 0;
  std::vector<std::vector<std::uint64_t>> adj;  // one bitset row per vertex

  int size() const { return static_cast<int>(vertices.size()); }
  bool adjacent(int i, int j) const { return (adj[i][j >> 6] >> (j & 63)) & 1; }
  int degree(int i) const {
    int d = 0;
    for (std::uint64_t w : adj[i]) d += std::popcount(w);
    return d;
  }
};

namespace detail {

inline ACGraph build_graph_impl(const std::vector<PauliString>& ops, bool reject_duplicates) {
  require(!ops.empty(), errc::empty_graph, "build_graph: no operators");
  require(ops.size() <= 4096, errc::too_large, "build_graph: too many operators");
  const int n = ops.front().n_qubits();
  for (const auto& p : ops)
    require(p.n_qubits() == n, errc::length_mismatch, "build_graph: operator length mismatch");
  if (reject_duplicates) {
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t j = i + 1; j < ops.size(); ++j)
        require(!ops[i].same_letters(ops[j]), errc::duplicate_operator,
                "build_graph: duplicate operator " + label_of(ops[i]));
  }
  ACGraph g;
  g.vertices = ops;
  g.words = static_cast<int>((ops.size() + 63) / 64);
  g.adj.assign(ops.size(), std::vector<std::uint64_t>(g.words, 0));
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (symplectic_inner(ops[i], ops[j]) == 1) {
        g.adj[i][j >> 6] |= 1ULL << (j & 63);
        g.adj[j][i >> 6] |= 1ULL << (i & 63);
      }
  return g;
}

}  // namespace detail

inline ACGraph build_graph(const std::vector<PauliString>& ops) {
  return detail::build_graph_impl(ops, /*reject_duplicates=*/true);
}

/// Variant used for weighted relations where the same operator may occur as
/// several vertices (copies commute, so they can never share a group).
inline ACGraph build_graph_multiset(const std::vector<PauliString>& ops) {
  return detail::build_graph_impl(ops, /*reject_duplicates=*/false);
}

/// Plain edge-list text export: one "i j" line per anti-commuting pair.
inline std::string to_edge_list(const ACGraph& g) {
  std::string out;
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      if (g.adjacent(i, j)) out += std::to_string(i) + " " + std::to_string(j) + "\n";
  return out;
}

/// A partition of the vertex set into groups that are each cliques
/// (mutually anti-commuting operator sets).
struct CliqueCoverCertificate {
  std::vector<std::vector<int>> groups;

  int group_count() const { return static_cast<int>(groups.size()); }
  int total() const {
    int t = 0;
    for (const auto& g : groups) t += static_cast<int>(g.size());
    return t;
  }
};

struct VerifyReport {
  bool valid = false;
  // (i, j) vertex pairs placed in one group although they commute
  std::vector<std::pair<int, int>> violating_pairs;
  std::string reason;
};

inline VerifyReport verify_certificate(const ACGraph& graph, const CliqueCoverCertificate& cert) {
  VerifyReport rep;
  std::vector<int> seen(graph.size(), 0);
  for (const auto& group : cert.groups) {
    for (int v : group) {
      require(v >= 0 && v < graph.size(), errc::index_out_of_range,
              "verify_certificate: vertex index out of range");
      ++seen[v];
    }
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b)
        if (!graph.adjacent(group[a], group[b]))
          rep.violating_pairs.emplace_back(group[a], group[b]);
  }
  for (int v = 0; v < graph.size(); ++v) {
    if (seen[v] == 0) {
      rep.reason = "vertex " + std::to_string(v) + " not covered";
      return rep;
    }
    if (seen[v] > 1) {
      rep.reason = "vertex " + std::to_string(v) + " covered more than once";
      return rep;
    }
  }
  if (!rep.violating_pairs.empty()) {
    rep.reason = "commuting pair inside a group: (" +
                 std::to_string(rep.violating_pairs.front().first) + ", " +
                 std::to_string(rep.violating_pairs.front().second) + ")";
    return rep;
  }
  rep.valid = true;
  return rep;
}

/// Greedy uniform cover: seeds each group with the lowest uncovered vertex
/// and extends by ascending vertex index. Deterministic.
inline std::optional<CliqueCoverCertificate> greedy_cover(const ACGraph& graph,
                                                          int target_group_size) {
  require(target_group_size >= 1, errc::bad_input, "greedy_cover: group size must be >= 1");
  const int n = graph.size();
  if (n % target_group_size != 0) return std::nullopt;
  std::vector<bool> covered(n, false);
  CliqueCoverCertificate cert;
  for (int seed = 0; seed < n; ++seed) {
    if (covered[seed]) continue;
    std::vector<int> group{seed};
    covered[seed] = true;
    std::vector<std::uint64_t> cand = graph.adj[seed];
    for (int v = 0; v < n && static_cast<int>(group.size()) < target_group_size; ++v) {
      if (covered[v] || !((cand[v >> 6] >> (v & 63)) & 1)) continue;
      group.push_back(v);
      covered[v] = true;
      for (int w = 0; w < graph.words; ++w) cand[w] &= graph.adj[v][w];
    }
    if (static_cast<int>(group.size()) != target_group_size) return std::nullopt;
    cert.groups.push_back(std::move(group));
  }
  return cert;
}

struct CoverSearchResult {
  std::optional<CliqueCoverCertificate> certificate;
  bool proven_impossible = false;
  std::uint64_t nodes_visited = 0;
};

namespace detail {

/// Backtracking cover search on <= 64 vertices. Canonical symmetry
/// breaking: always branch on the lowest uncovered vertex, which either
/// joins an open group or opens the next one.
struct CoverSearcher {
  std::vector<std::uint64_t> adj;
  int k_groups, group_size, n;
  std::uint64_t all_mask;
  std::vector<std::vector<int>> groups;
  std::vector<std::uint64_t> cand_mask;  // vertices adjacent to all members
  std::uint64_t covered = 0;
  std::uint64_t nodes = 0;
  std::optional<CliqueCoverCertificate> found;

  CoverSearcher(const ACGraph& graph, int k, int s)
      : k_groups(k), group_size(s), n(graph.size()) {
    all_mask = n == 64 ? ~0ULL : ((1ULL << n) - 1);
    adj.resize(n);
    for (int i = 0; i < n; ++i) adj[i] = graph.adj[i][0];
  }

  void search() {
    if (found) return;
    ++nodes;
    if (covered == all_mask) {
      CliqueCoverCertificate cert;
      cert.groups = groups;
      found = cert;
      return;
    }
    int v = std::countr_zero(~covered & all_mask);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      int need = group_size - static_cast<int>(groups[gi].size());
      if (std::popcount(cand_mask[gi] & ~covered) < need) return;
    }
    for (std::size_t gi = 0; gi < groups.size() && !found; ++gi) {
      if (static_cast<int>(groups[gi].size()) >= group_size) continue;
      if (!((cand_mask[gi] >> v) & 1)) continue;
      groups[gi].push_back(v);
      std::uint64_t saved = cand_mask[gi];
      cand_mask[gi] &= adj[v];
      covered |= 1ULL << v;
      search();
      covered &= ~(1ULL << v);
      cand_mask[gi] = saved;
      groups[gi].pop_back();
    }
    if (!found && static_cast<int>(groups.size()) < k_groups) {
      groups.push_back({v});
      cand_mask.push_back(adj[v]);
      covered |= 1ULL << v;
      search();
      covered &= ~(1ULL << v);
      cand_mask.pop_back();
      groups.pop_back();
    }
  }
};

}  // namespace detail

/// Exhaustive uniform-cover search. Either returns a certificate or proves
/// that no cover into k_groups groups of group_size exists.
inline CoverSearchResult exact_cover(const ACGraph& graph, int k_groups, int group_size) {
  require(graph.size() <= 64, errc::too_large, "exact_cover: more than 64 vertices");
  require(k_groups * group_size == graph.size(), errc::size_mismatch,
          "exact_cover: k_groups * group_size must equal vertex count");
  detail::CoverSearcher searcher(graph, k_groups, group_size);
  searcher.search();
  CoverSearchResult res;
  res.nodes_visited = searcher.nodes;
  if (searcher.found)
    res.certificate = std::move(searcher.found);
  else
    res.proven_impossible = true;
  return res;
}

namespace detail {

/// Branch and bound with greedy-coloring upper bounds (<= 64 vertices).
struct CliqueSearcher {
  std::vector<std::uint64_t> adj;
  int best = 0;

  explicit CliqueSearcher(const ACGraph& graph) {
    adj.resize(graph.size());
    for (int i = 0; i < graph.size(); ++i) adj[i] = graph.adj[i][0];
  }

  int color_bound(std::uint64_t cand) const {
    int colors = 0;
    while (cand) {
      ++colors;
      std::uint64_t cls = 0, rest = cand;
      while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        if ((adj[v] & cls) == 0) {
          cls |= 1ULL << v;
          cand &= ~(1ULL << v);
        }
      }
    }
    return colors;
  }

  void expand(std::uint64_t cand, int depth) {
    if (cand == 0) {
      best = std::max(best, depth);
      return;
    }
    if (depth + color_bound(cand) <= best) return;
    std::uint64_t rest = cand;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (depth + std::popcount(cand) <= best) return;
      expand(cand & adj[v], depth + 1);
      cand &= ~(1ULL << v);
    }
  }
};

}  // namespace detail

inline int max_clique(const ACGraph& graph) {
  require(graph.size() <= 64, errc::too_large, "max_clique: more than 64 vertices");
  detail::CliqueSearcher s(graph);
  std::uint64_t all = graph.size() == 64 ? ~0ULL : ((1ULL << graph.size()) - 1);
  s.expand(all, 0);
  return s.best;
}

/// Structural checks for graphs arising from uniform-hypergraph relations
/// with r(H) = log2(|E|) + 1: vertex count, clique size, cover number and
/// regularity. The degree item checks the number of commuting partners per
/// vertex (the complement-graph degree), which is the quantity equal to
/// 2^{2(n-1)} - 1; the anti-commutation degree itself is 2^{2(n-1)}.
struct StructureReport {
  int n_vertices_measured = 0, n_vertices_predicted = 0;
  int clique_measured = 0, clique_predicted = 0;
  int cover_measured = 0, cover_predicted = 0;
  bool regular = false;
  int commuting_degree_measured = -1, commuting_degree_predicted = 0;
  bool vertices_pass = false, clique_pass = false, cover_pass = false, degree_pass = false;
  bool all_pass = false;
};

inline StructureReport structure_check(const ACGraph& graph, int n_parties, int n_edges) {
  StructureReport r;
  r.n_vertices_measured = graph.size();
  r.n_vertices_predicted = 2 * n_edges * n_edges;
  r.vertices_pass = r.n_vertices_measured == r.n_vertices_predicted;

  r.clique_predicted = 2 * n_edges;
  r.clique_measured = graph.size() <= 64 ? max_clique(graph) : -1;
  r.clique_pass = r.clique_measured == r.clique_predicted;

  r.cover_predicted = n_edges;
  r.cover_measured = -1;
  if (r.vertices_pass && r.clique_pass && graph.size() <= 64) {
    // cp >= |V| / clique size = n_edges, so one cover of that size pins it.
    auto res = exact_cover(graph, n_edges, graph.size() / n_edges);
    if (res.certificate) r.cover_measured = n_edges;
  }
  r.cover_pass = r.cover_measured == r.cover_predicted;

  r.regular = true;
  int deg0 = graph.size() ? graph.degree(0) : 0;
  for (int v = 1; v < graph.size(); ++v)
    if (graph.degree(v) != deg0) r.regular = false;
  if (r.regular && graph.size() > 0) r.commuting_degree_measured = graph.size() - 1 - deg0;
  r.commuting_degree_predicted = (1 << (2 * (n_parties - 1))) - 1;
  r.degree_pass = r.regular && r.commuting_degree_measured == r.commuting_degree_predicted;

  r.all_pass = r.vertices_pass && r.clique_pass && r.cover_pass && r.degree_pass;
  return r;
}

/// m pairwise anti-commuting Hermitian operators on m/2 qubits:
/// O_1 = X I.., O_2 = Z I.., O_{2k+1} = Y^k X I.., O_{2k+2} = Y^k Z I.. .
inline std::vector<PauliString> complete_graph_representation(int m) {
  require(m % 2 == 0, errc::odd_m, "complete_graph_representation: m must be even");
  require(m >= 2 && m <= 24, errc::too_large, "complete_graph_representation: m out of range");
  const int nq = m / 2;
  std::vector<PauliString> ops;
  for (int k = 0; k < nq; ++k) {
    std::string prefix(k, 'Y');
    std::string tail(nq - k - 1, 'I');
    ops.push_back(parse_label(prefix + "X" + tail));
    ops.push_back(parse_label(prefix + "Z" + tail));
  }
  return ops;
}

/// One grouping = a list of groups; each group is an ordered operator list.
using Grouping = std::vector<std::vector<PauliString>>;

/// Composes an anti-commuting grouping on a hub register with one grouping
/// per satellite register. The hub grouping has N0 groups of size n0; there
/// must be exactly n0 satellite groupings, all with the same group count N.
/// Output: n0 * N0 * N disjoint groups of size sum_l n_l, each internally
/// anti-commuting, on the concatenated register. The permutation family on
/// each hub group is the cyclic-shift family (sharply transitive).
inline Grouping iterative_grouping(const Grouping& outer, const std::vector<Grouping>& inner) {
  require(!outer.empty(), errc::bad_input, "iterative_grouping: empty outer grouping");
  const int n0 = static_cast<int>(outer.front().size());
  for (const auto& grp : outer)
    require(static_cast<int>(grp.size()) == n0, errc::mismatched_group_counts,
            "iterative_grouping: outer groups must have uniform size");
  require(static_cast<int>(inner.size()) == n0, errc::mismatched_group_counts,
          "iterative_grouping: need one inner grouping per outer-group slot");
  require(!inner.empty(), errc::bad_input, "iterative_grouping: no inner groupings");
  const int N = static_cast<int>(inner.front().size());
  for (const auto& gr : inner)
    require(static_cast<int>(gr.size()) == N, errc::mismatched_group_counts,
            "iterative_grouping: inner groupings must share the group count");

  const int hub_qubits = outer.front().front().n_qubits();
  std::vector<int> offs(n0 + 1, hub_qubits);
  for (int l = 0; l < n0; ++l) {
    int nq = inner[l].front().front().n_qubits();
    offs[l + 1] = offs[l] + nq;
  }
  const int total_qubits = offs[n0];
  require(total_qubits <= 64, errc::too_large, "iterative_grouping: register exceeds 64 qubits");

  auto place = [&](const PauliString& hub_op, const PauliString& sat_op, int l) {
    std::vector<int> hub_idx(hub_qubits);
    for (int q = 0; q < hub_qubits; ++q) hub_idx[q] = q;
    PauliString res = embed(hub_op, total_qubits, hub_idx);
    std::vector<int> sat_idx(sat_op.n_qubits());
    for (int q = 0; q < sat_op.n_qubits(); ++q) sat_idx[q] = offs[l] + q;
    return multiply(res, embed(sat_op, total_qubits, sat_idx));
  };

  Grouping out;
  for (int i = 0; i < n0; ++i) {           // permutation index (cyclic shift by i)
    for (const auto& hub_group : outer) {  // j
      for (int k = 0; k < N; ++k) {
        std::vector<PauliString> group;
        for (int l = 0; l < n0; ++l) {
          const PauliString& hub_op = hub_group[(l + i) % n0];
          for (const auto& sat_op : inner[l][k]) group.push_back(place(hub_op, sat_op, l));
        }
        out.push_back(std::move(group));
      }
    }
  }

  // Validate before returning: pairwise anti-commutation inside each group
  // and global disjointness.
  std::vector<PauliString> all;
  for (const auto& group : out) {
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b)
        require(anticommute(group[a], group[b]), errc::non_transitive_permutations,
                "iterative_grouping: produced a commuting pair inside a group");
    for (const auto& op : group) all.push_back(op);
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 1; i < all.size(); ++i)
    require(!all[i - 1].same_letters(all[i]), errc::duplicate_operator,
            "iterative_grouping: groups are not disjoint");
  return out;
}

}  // namespace bellmono
