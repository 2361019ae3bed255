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

#include <functional>
#include <set>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "bellmono/anticommutation.hpp"
#include "bellmono/linalg.hpp"

using namespace bellmono;

namespace {

std::vector<PauliString> parse_all(const std::vector<std::string>& labels) {
  std::vector<PauliString> out;
  for (const auto& l : labels) out.push_back(parse_label(l));
  return out;
}

const std::vector<std::string> kTriangleOps = {"XXI", "XZI", "ZIX", "ZIZ",
                                               "XIX", "XIZ", "ZXI", "ZZI"};

std::vector<PauliString> square_ops(char second_letter) {
  std::vector<std::vector<int>> edges{{0, 1, 2}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1}};
  std::vector<PauliString> ops;
  for (const auto& e : edges)
    for (int bits = 0; bits < 8; ++bits) {
      std::string label(4, 'I');
      for (int i = 0; i < 3; ++i) label[e[i]] = ((bits >> i) & 1) ? second_letter : 'X';
      ops.push_back(parse_label(label));
    }
  return ops;
}

/// Exhaustive feasibility oracle: partitions into k groups of size s that
/// are all cliques, by direct recursion with only the canonical opening
/// order as symmetry breaking.
bool naive_uniform_cover_exists(const ACGraph& g, int k, int s) {
  std::vector<int> assign(g.size(), -1);
  std::vector<int> count(k, 0);
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v == g.size()) return true;
    int opened = 0;
    for (int c : count)
      if (c > 0) ++opened;
    for (int grp = 0; grp < k; ++grp) {
      if (count[grp] == s) continue;
      if (count[grp] == 0 && grp > opened) break;
      bool ok = true;
      for (int u = 0; u < v; ++u)
        if (assign[u] == grp && !g.adjacent(u, v)) ok = false;
      if (!ok) continue;
      assign[v] = grp;
      ++count[grp];
      if (rec(v + 1)) return true;
      --count[grp];
      assign[v] = -1;
    }
    return false;
  };
  return rec(0);
}

ACGraph random_graph(int n, Rng& rng) {
  std::vector<PauliString> ops;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  while (static_cast<int>(ops.size()) < n) {
    std::uint64_t x = rng.next_u64() & ((1ULL << 6) - 1);
    std::uint64_t z = rng.next_u64() & ((1ULL << 6) - 1);
    if (!seen.insert({x, z}).second) continue;
    ops.push_back(PauliString(6, x, z, 0));
  }
  return build_graph(ops);
}

}  // namespace

TEST_CASE("build_graph basic shapes") {
  ACGraph g1 = build_graph(parse_all({"X", "Z"}));
  REQUIRE(g1.size() == 2);
  REQUIRE(g1.adjacent(0, 1));

  ACGraph g2 = build_graph(parse_all({"XX", "ZZ"}));
  REQUIRE_FALSE(g2.adjacent(0, 1));
  REQUIRE(g2.degree(0) == 0);

  REQUIRE_THROWS_AS(build_graph(parse_all({"XX", "XX"})), Error);
  REQUIRE_THROWS_AS(build_graph(parse_all({"X", "XX"})), Error);
}

TEST_CASE("triangle operators form an anti-commutation-regular graph") {
  ACGraph g = build_graph(parse_all(kTriangleOps));
  REQUIRE(g.size() == 8);
  for (int v = 0; v < 8; ++v) REQUIRE(g.degree(v) == 4);
  // each vertex commutes with 3 others, matching 2^{2(n-1)} - 1 for n = 2
  for (int v = 0; v < 8; ++v) REQUIRE(g.size() - 1 - g.degree(v) == 3);
}

TEST_CASE("verify_certificate accepts the triangle grouping") {
  ACGraph g = build_graph(parse_all(kTriangleOps));
  CliqueCoverCertificate cert{{{0, 1, 2, 3}, {4, 5, 6, 7}}};
  REQUIRE(verify_certificate(g, cert).valid);
}

TEST_CASE("verify_certificate accepts the listed 9-qubit anti-commuting set") {
  auto ops = parse_all({"XIIIIXXXI", "XIIIIYYYI", "XIIIIXYIX", "XIIIIYXIY", "XIIIIXIYY",
                        "XIIIIYIXX", "XIIIIIXYX", "XIIIIIYXY"});
  ACGraph g = build_graph(ops);
  CliqueCoverCertificate cert{{{0, 1, 2, 3, 4, 5, 6, 7}}};
  REQUIRE(verify_certificate(g, cert).valid);
}

TEST_CASE("verify_certificate reports a violating commuting pair") {
  ACGraph g = build_graph(parse_all(kTriangleOps));
  // swap one element across the two valid groups
  CliqueCoverCertificate cert{{{0, 1, 2, 7}, {4, 5, 6, 3}}};
  auto rep = verify_certificate(g, cert);
  REQUIRE_FALSE(rep.valid);
  REQUIRE_FALSE(rep.violating_pairs.empty());
  auto [a, b] = rep.violating_pairs.front();
  REQUIRE_FALSE(g.adjacent(a, b));
  // confirm with the dense oracle that the reported pair commutes
  Mat ma(8), mb(8);
  ma.a = to_matrix(g.vertices[a]);
  mb.a = to_matrix(g.vertices[b]);
  REQUIRE(max_abs(ma * mb - mb * ma) == 0.0);
}

TEST_CASE("verify_certificate rejects incomplete or overlapping covers") {
  ACGraph g = build_graph(parse_all({"X", "Z"}));
  REQUIRE_FALSE(verify_certificate(g, CliqueCoverCertificate{{{0}}}).valid);
  REQUIRE_FALSE(verify_certificate(g, CliqueCoverCertificate{{{0, 1}, {1}}}).valid);
  REQUIRE_THROWS_AS(verify_certificate(g, CliqueCoverCertificate{{{0, 5}}}), Error);
}

TEST_CASE("greedy_cover finds the triangle grouping deterministically") {
  ACGraph g = build_graph(parse_all(kTriangleOps));
  auto cert = greedy_cover(g, 4);
  REQUIRE(cert.has_value());
  REQUIRE(cert->groups == std::vector<std::vector<int>>{{0, 1, 2, 3}, {4, 5, 6, 7}});
  REQUIRE(verify_certificate(g, *cert).valid);
}

TEST_CASE("greedy_cover returns nothing for edgeless graphs") {
  ACGraph g = build_graph(parse_all({"XX", "ZZ"}));
  REQUIRE_FALSE(greedy_cover(g, 2).has_value());
}

TEST_CASE("square network splits into 4 groups of 8") {
  ACGraph g = build_graph(square_ops('Z'));
  REQUIRE(g.size() == 32);
  auto cert = greedy_cover(g, 8);
  if (!cert) {
    auto res = exact_cover(g, 4, 8);
    REQUIRE(res.certificate.has_value());
    cert = res.certificate;
  }
  REQUIRE(cert->group_count() == 4);
  REQUIRE(verify_certificate(g, *cert).valid);
}

TEST_CASE("exact_cover finds the triangle cover and proves small impossibilities") {
  ACGraph tri = build_graph(parse_all(kTriangleOps));
  auto found = exact_cover(tri, 2, 4);
  REQUIRE(found.certificate.has_value());
  REQUIRE(verify_certificate(tri, *found.certificate).valid);

  ACGraph iso = build_graph(parse_all({"XX", "ZZ"}));
  auto impossible = exact_cover(iso, 1, 2);
  REQUIRE(impossible.proven_impossible);

  REQUIRE_THROWS_AS(exact_cover(tri, 3, 4), Error);
}

TEST_CASE("exact_cover agrees with a naive partition oracle on small graphs") {
  Rng rng(2024);
  int checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    int n = 4 + 2 * rng.uniform_int(4);  // 4, 6, 8, 10
    ACGraph g = random_graph(n, rng);
    for (int s : {2, n / 2}) {
      if (n % s != 0) continue;
      int k = n / s;
      auto fast = exact_cover(g, k, s);
      bool naive = naive_uniform_cover_exists(g, k, s);
      REQUIRE(fast.certificate.has_value() == naive);
      if (fast.certificate) REQUIRE(verify_certificate(g, *fast.certificate).valid);
      ++checked;
    }
  }
  REQUIRE(checked > 20);
}

TEST_CASE("structure report passes for the triangle graph") {
  ACGraph g = build_graph(parse_all(kTriangleOps));
  auto rep = structure_check(g, 2, 2);
  REQUIRE(rep.vertices_pass);
  REQUIRE(rep.clique_measured == 4);
  REQUIRE(rep.cover_measured == 2);
  REQUIRE(rep.commuting_degree_measured == 3);
  REQUIRE(rep.all_pass);
}

TEST_CASE("structure report passes for the square network") {
  ACGraph g = build_graph(square_ops('Z'));
  auto rep = structure_check(g, 3, 4);
  REQUIRE(rep.n_vertices_measured == 32);
  REQUIRE(rep.clique_measured == 8);
  REQUIRE(rep.cover_measured == 4);
  REQUIRE(rep.commuting_degree_measured == 15);
  REQUIRE(rep.all_pass);
}

TEST_CASE("structure report fails on a pruned graph") {
  auto labels = kTriangleOps;
  labels.pop_back();
  ACGraph g = build_graph(parse_all(labels));
  auto rep = structure_check(g, 2, 2);
  REQUIRE_FALSE(rep.vertices_pass);
  REQUIRE_FALSE(rep.all_pass);
}

TEST_CASE("complete graph representation base cases") {
  auto m2 = complete_graph_representation(2);
  REQUIRE(label_of(m2[0]) == "X");
  REQUIRE(label_of(m2[1]) == "Z");

  auto m4 = complete_graph_representation(4);
  REQUIRE(m4.size() == 4);
  std::vector<std::string> labels;
  for (const auto& op : m4) labels.push_back(label_of(op));
  REQUIRE(labels == std::vector<std::string>{"XI", "ZI", "YX", "YZ"});
  for (std::size_t i = 0; i < m4.size(); ++i)
    for (std::size_t j = i + 1; j < m4.size(); ++j) REQUIRE(anticommute(m4[i], m4[j]));

  REQUIRE_THROWS_AS(complete_graph_representation(3), Error);
}

TEST_CASE("complete graph representation anti-commutes for all pairs") {
  for (int m = 2; m <= 8; m += 2) {
    auto ops = complete_graph_representation(m);
    REQUIRE(static_cast<int>(ops.size()) == m);
    REQUIRE(ops.front().n_qubits() == m / 2);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      REQUIRE(ops[i].is_hermitian());
      for (std::size_t j = i + 1; j < ops.size(); ++j) {
        REQUIRE(anticommute(ops[i], ops[j]));
        Mat a(1 << ops[i].n_qubits()), b = a;
        a.a = to_matrix(ops[i]);
        b.a = to_matrix(ops[j]);
        REQUIRE(max_abs(a * b + b * a) == 0.0);
      }
    }
  }
  // larger sizes: symplectic check only
  for (int m = 10; m <= 24; m += 2) {
    auto ops = complete_graph_representation(m);
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t j = i + 1; j < ops.size(); ++j) REQUIRE(anticommute(ops[i], ops[j]));
  }
}

TEST_CASE("iterative grouping reproduces the 7-qubit tree cover") {
  Grouping tri{parse_all({"XXI", "XZI", "ZIX", "ZIZ"}), parse_all({"XIX", "XIZ", "ZXI", "ZZI"})};
  Grouping outer{parse_all({"X", "Z"})};
  Grouping out = iterative_grouping(outer, {tri, tri});
  REQUIRE(out.size() == 4);  // n0 * N0 * N = 2 * 1 * 2
  for (const auto& g : out) REQUIRE(g.size() == 8);

  // the operators are exactly the tree tensor elements: a hub letter on
  // qubit 0 times a triangle element on qubits 1-3 or 4-6
  std::set<std::string> produced;
  for (const auto& g : out)
    for (const auto& op : g) produced.insert(label_of(op));
  REQUIRE(produced.size() == 32);
  REQUIRE(produced.count("XXXIIII") == 1);  // X0 * XXI on register 1
  REQUIRE(produced.count("ZIIIXIX") == 1);  // Z0 * XIX on register 2
}

TEST_CASE("iterative grouping builds the 9-qubit 8x16 cover with the listed group") {
  // x-y plane square grouping anchored at the 8 listed register operators
  std::vector<std::string> anchor{"XXXI", "YYYI", "XYIX", "YXIY", "XIYY", "YIXX", "IXYX", "IYXY"};
  std::vector<PauliString> all = square_ops('Y');
  std::vector<PauliString> anchor_ops = parse_all(anchor), rest;
  for (const auto& op : all) {
    bool hit = false;
    for (const auto& a : anchor_ops)
      if (a.same_letters(op)) hit = true;
    if (!hit) rest.push_back(op);
  }
  REQUIRE(rest.size() == 24);
  auto res = exact_cover(build_graph(rest), 3, 8);
  REQUIRE(res.certificate.has_value());
  Grouping sq{anchor_ops};
  for (const auto& grp : res.certificate->groups) {
    std::vector<PauliString> g;
    for (int i : grp) g.push_back(rest[i]);
    sq.push_back(g);
  }

  Grouping outer{parse_all({"X", "Y"})};
  Grouping nine = iterative_grouping(outer, {sq, sq});
  REQUIRE(nine.size() == 8);
  for (const auto& g : nine) REQUIRE(g.size() == 16);

  // the listed 16-element group must appear as one of the produced groups
  // (one misprinted letter corrected: the fourth second-register element
  // must be YYXIYIIII, since YYXIXIIII commutes with YXIYYIIII)
  std::set<std::string> target{"XIIIIXXXI", "XIIIIYYYI", "XIIIIXYIX", "XIIIIYXIY",
                               "XIIIIXIYY", "XIIIIYIXX", "XIIIIIXYX", "XIIIIIYXY",
                               "YXXXIIIII", "YYYYIIIII", "YXYIXIIII", "YYXIYIIII",
                               "YXIYYIIII", "YYIXXIIII", "YIXYXIIII", "YIYXYIIII"};
  bool found = false;
  for (const auto& g : nine) {
    std::set<std::string> got;
    for (const auto& op : g) got.insert(label_of(op));
    if (got == target) found = true;
  }
  REQUIRE(found);
}

TEST_CASE("iterative grouping degenerate case preserves the inner grouping") {
  Grouping inner{parse_all({"XX", "ZZ", "YX"}), parse_all({"XZ", "ZX", "YZ"})};
  for (auto& g : inner)
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j) REQUIRE(anticommute(g[i], g[j]));
  Grouping outer{{parse_label("X")}};
  Grouping out = iterative_grouping(outer, {inner});
  REQUIRE(out.size() == inner.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    REQUIRE(out[k].size() == inner[k].size());
    for (std::size_t i = 0; i < out[k].size(); ++i)
      REQUIRE(label_of(out[k][i]) == "X" + label_of(inner[k][i]));
  }
}

TEST_CASE("iterative grouping counting identity") {
  Grouping tri{parse_all({"XXI", "XZI", "ZIX", "ZIZ"}), parse_all({"XIX", "XIZ", "ZXI", "ZZI"})};
  Grouping outer{parse_all({"X", "Z"})};
  Grouping out = iterative_grouping(outer, {tri, tri});
  REQUIRE(out.size() == 2u * 1u * 2u);  // n0 * N0 * N
  std::size_t total = 0;
  for (const auto& g : out) total += g.size();
  REQUIRE(total == out.size() * 8);  // group size = sum_l n_l
}

TEST_CASE("iterative grouping rejects mismatched inputs") {
  Grouping tri{parse_all({"XXI", "XZI", "ZIX", "ZIZ"}), parse_all({"XIX", "XIZ", "ZXI", "ZZI"})};
  Grouping outer{parse_all({"X", "Z"})};
  REQUIRE_THROWS_AS(iterative_grouping(outer, {tri}), Error);
  Grouping bad_inner{parse_all({"X"})};
  REQUIRE_THROWS_AS(iterative_grouping(outer, {tri, bad_inner}), Error);
}

TEST_CASE("edge list export is stable") {
  ACGraph g = build_graph(parse_all({"X", "Z", "Y"}));
  REQUIRE(to_edge_list(g) == "0 1\n0 2\n1 2\n");
}
