#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include "atomcharge/affine_graph.hpp"

using namespace atomcharge;

namespace {

using EdgeTriple = std::tuple<Weight, Weight, std::string>;

std::set<EdgeTriple> edge_set(const TwistedGraph& g) {
  std::set<EdgeTriple> out;
  for (const auto& e : g.edges()) out.emplace(g.vertices()[e.src], g.vertices()[e.dst], e.label.to_string());
  return out;
}

std::vector<Weight> dominant_bases(int n, int max_size) {
  std::vector<Weight> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int max_part, int rem) -> void {
    std::vector<int> p = cur;
    p.resize(static_cast<std::size_t>(n + 1), 0);
    out.emplace_back(p);
    if (static_cast<int>(cur.size()) == n + 1) return;
    for (int v = std::min(max_part, rem); v >= 1; --v) {
      cur.push_back(v);
      self(self, v, rem - v);
      cur.pop_back();
    }
  };
  rec(rec, max_size, max_size);
  return out;
}

}  // namespace

TEST(AffineGraph, Intervals) {
  EXPECT_EQ(build_interval({2, 0}, Rank(1)), (std::vector<Weight>{{2, 0}, {1, 1}, {0, 2}}));
  auto iv = build_interval({2, 1, 0}, Rank(2));
  EXPECT_EQ(iv.size(), 7u);
  EXPECT_TRUE(std::find(iv.begin(), iv.end(), Weight{1, 1, 1}) != iv.end());
  EXPECT_EQ(build_interval({1, 1, 1}, Rank(2)), (std::vector<Weight>{{1, 1, 1}}));
  EXPECT_THROW(build_interval({0, 1}, Rank(1)), InvalidInput);
  EXPECT_THROW(build_interval({1, 0}, Rank(2)), InvalidInput);
}

TEST(AffineGraph, RankOneStages) {
  auto g0 = build_graph({2, 0}, Stage::finite(0));
  EXPECT_EQ(edge_set(g0), (std::set<EdgeTriple>{{{1, 1}, {2, 0}, "1δ+α_1"},
                                                {{0, 2}, {2, 0}, "0δ+α_1"},
                                                {{1, 1}, {0, 2}, "1δ-α_1"}}));
  auto g1 = build_graph({2, 0}, Stage::finite(1));
  EXPECT_EQ(edge_set(g1), (std::set<EdgeTriple>{{{1, 1}, {2, 0}, "1δ+α_1"},
                                                {{0, 2}, {2, 0}, "0δ+α_1"},
                                                {{0, 2}, {1, 1}, "1δ-α_1"}}));
  EXPECT_EQ(edge_set(build_graph({2, 0}, Stage::infinity())), edge_set(g1));
  EXPECT_EQ(g0.stabilization_stage(), 1);
  EXPECT_EQ(g1.arr({1, 1}), 1);
  EXPECT_EQ(g1.arr({0, 2}), 0);
  EXPECT_EQ(g1.arr({2, 0}), 2);
  EXPECT_THROW(g1.arr({3, -1}), InvalidInput);
}

TEST(AffineGraph, TrivialInterval) {
  for (Stage s : {Stage::finite(0), Stage::finite(5), Stage::infinity()}) {
    auto g = build_graph({1, 1, 1}, s);
    EXPECT_EQ(g.vertices().size(), 1u);
    EXPECT_TRUE(g.edges().empty());
    EXPECT_EQ(g.arr({1, 1, 1}), 0);
  }
}

TEST(AffineGraph, StageReflections) {
  Rank r2(2);
  EXPECT_EQ(stage_reflection(1, r2), (AffineCoroot{1, Root{1, 2}, -1}));
  EXPECT_EQ(stage_reflection(2, r2), (AffineCoroot{1, Root{2, 2}, -1}));
  EXPECT_EQ(stage_reflection(3, r2), (AffineCoroot{2, Root{1, 2}, -1}));
  EXPECT_THROW(stage_reflection(0, r2), InvalidInput);
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 20; ++m) EXPECT_EQ(flip_index(stage_reflection(m, Rank(n)), n).value_or(-1), m);
}

TEST(AffineGraph, AffineReflections) {
  EXPECT_EQ(apply_affine_reflection({1, Root{1, 1}, -1}, {1, 1}), (Weight{0, 2}));
  for (const Weight& mu : build_interval({3, 1, 0}, Rank(2))) {
    for (const Root& b : positive_roots(2)) {
      EXPECT_EQ(apply_affine_reflection({0, b, 1}, mu), reflect(mu, b));
      for (int c = 0; c <= 3; ++c)
        for (int sign : {1, -1}) {
          AffineCoroot a{c, b, sign};
          EXPECT_EQ(apply_affine_reflection(a, apply_affine_reflection(a, mu)), mu);
        }
    }
  }
}

TEST(AffineGraph, InfinityFormulaExamples) {
  EXPECT_EQ(arr_infinity_formula({1, 1}, {2, 0}), 1);
  EXPECT_EQ(arr_infinity_formula({0, 2}, {2, 0}), 0);
  EXPECT_EQ(arr_infinity_formula({2, 0}, {2, 0}), 2);
  EXPECT_THROW(arr_infinity_formula({3, -1}, {2, 0}), InvalidInput);
}

TEST(AffineGraph, Properties) {
  for (int n = 1; n <= 3; ++n) {
    const Rank rank(n);
    for (const Weight& base : dominant_bases(n, n == 3 ? 5 : 6)) {
      auto g0 = build_graph(base, Stage::finite(0));
      const auto& verts = g0.vertices();
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& e : g0.edges()) {
        EXPECT_TRUE(e.label.is_positive());
        EXPECT_TRUE(pairs.emplace(std::min(e.src, e.dst), std::max(e.src, e.dst)).second);
        EXPECT_EQ(apply_affine_reflection(e.label, verts[e.dst]), verts[e.src]);
      }
      for (const Weight& mu : verts) {
        EXPECT_TRUE(bruhat_leq_dominant(mu, base));
        EXPECT_EQ(g0.arr(mu), length(mu)) << base.to_string() << " " << mu.to_string();
      }
      const int M = g0.stabilization_stage();
      auto ginf = build_graph(base, Stage::infinity());
      EXPECT_EQ(edge_set(build_graph(base, Stage::finite(M))), edge_set(ginf));
      if (M > 0) {
        EXPECT_NE(edge_set(build_graph(base, Stage::finite(M - 1))), edge_set(ginf));
      }
      for (const Weight& mu : verts) EXPECT_EQ(ginf.arr(mu), arr_infinity_formula(mu, base));

      for (int m = 0; m < M; ++m) {
        auto g = build_graph(base, Stage::finite(m));
        auto next = build_graph(base, Stage::finite(m + 1));
        const AffineCoroot t = stage_reflection(m + 1, rank);
        for (const Weight& mu : verts) {
          const Weight tmu = apply_affine_reflection(t, mu);
          const LineOrder ord = line_compare(mu, tmu);
          int delta = 0;
          if (ord == LineOrder::Lower) delta = -1;
          if (ord == LineOrder::Greater && g.contains(tmu)) {
            delta = 1;
            EXPECT_EQ(g.arr(mu), g.arr(tmu) - 1);
          }
          EXPECT_EQ(next.arr(mu), g.arr(mu) + delta);
        }
      }
    }
  }
}

TEST(AffineGraph, Export) {
  auto g = build_graph({2, 0}, Stage::finite(0));
  const std::string dot = g.to_dot();
  EXPECT_NE(dot.find("digraph stage_0"), std::string::npos);
  EXPECT_NE(dot.find("v1 -> v2 [label=\"1δ-α_1\"]"), std::string::npos);
  auto j = g.to_json();
  EXPECT_EQ(j["vertices"].size(), 3u);
  EXPECT_EQ(j["edges"].size(), 3u);
  EXPECT_EQ(j["stage"], "0");
  EXPECT_EQ(build_graph({2, 0}, Stage::infinity()).to_json()["stage"], "inf");
}
