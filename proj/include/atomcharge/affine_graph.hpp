#pragma once

// Bruhat graphs on weight intervals I(λ′) and their twists by the stage
// sequence δ−α_{1,n}∨, δ−α_{2,n}∨, …, δ−α_n∨, 2δ−α_{1,n}∨, …

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomcharge/errors.hpp"
#include "atomcharge/root_data.hpp"

namespace atomcharge {

/// cδ + sign·β∨.
struct AffineCoroot {
  int level = 0;
  Root finite;
  int sign = 1;

  bool is_positive() const { return level > 0 || (level == 0 && sign == 1); }

  std::string to_string() const {
    return std::to_string(level) + "δ" + (sign > 0 ? "+" : "-") + finite.to_string();
  }
  friend bool operator==(const AffineCoroot&, const AffineCoroot&) = default;
};

class Stage {
 public:
  static Stage finite(int m) {
    if (m < 0) throw InvalidInput("stage must be nonnegative");
    return Stage(m);
  }
  static Stage infinity() { return Stage(-1); }

  bool is_infinite() const { return m_ < 0; }
  int value() const {
    if (is_infinite()) throw InvalidInput("stage infinity has no finite index");
    return m_;
  }
  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(m_); }
  friend bool operator==(Stage, Stage) = default;

 private:
  explicit Stage(int m) : m_(m) {}
  int m_;
};

/// Position of cδ − α_{j,n}∨ in the stage sequence (1-based); nullopt for
/// coroots that never get reversed.
inline std::optional<int> flip_index(const AffineCoroot& a, int n) {
  if (a.sign != -1 || a.level < 1 || a.finite.k != n) return std::nullopt;
  return (a.level - 1) * n + a.finite.j;
}

inline bool is_reversed(const AffineCoroot& a, int n, Stage stage) {
  auto idx = flip_index(a, n);
  if (!idx) return false;
  return stage.is_infinite() || *idx <= stage.value();
}

/// The coroot crossed between stages m and m+1.
inline AffineCoroot stage_reflection(int m_plus_1, Rank rank) {
  if (m_plus_1 < 1) throw InvalidInput("stage reflection index must be positive");
  const int n = rank.value();
  const int c = (m_plus_1 + n - 1) / n;
  const int j = m_plus_1 - (c - 1) * n;
  return {c, Root{j, n}, -1};
}

inline Weight apply_affine_reflection(const AffineCoroot& a, const Weight& mu) {
  check_root(a.finite, mu.rank());
  const int p = pairing(mu, a.finite);
  const int shift = a.sign < 0 ? a.level + p : p - a.level;
  return mu - shift * a.finite.vector(mu.rank());
}

inline std::vector<Weight> build_interval(const Weight& lambda_prime, Rank rank) {
  if (lambda_prime.size() != static_cast<std::size_t>(rank.letters()))
    throw InvalidInput("weight " + lambda_prime.to_string() + " does not have rank+1 coordinates");
  if (!is_dominant(lambda_prime)) throw InvalidInput("weight " + lambda_prime.to_string() + " is not dominant");
  if (lambda_prime.coords.back() < 0) throw InvalidInput("weight " + lambda_prime.to_string() + " has a negative part");
  return lower_interval(lambda_prime);
}

struct GraphEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  AffineCoroot label;
};

class TwistedGraph {
 public:
  TwistedGraph(Weight base, Stage stage, std::vector<Weight> vertices, std::vector<GraphEdge> edges)
      : base_(std::move(base)), stage_(stage), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    in_degree_.assign(vertices_.size(), 0);
    for (const auto& e : edges_) ++in_degree_[e.dst];
    for (std::size_t v = 0; v < vertices_.size(); ++v) index_.emplace(vertices_[v], v);
  }

  const Weight& base() const { return base_; }
  Stage stage() const { return stage_; }
  int rank() const { return base_.rank(); }
  const std::vector<Weight>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  std::optional<std::size_t> index_of(const Weight& mu) const {
    auto it = index_.find(mu);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Weight& mu) const { return index_.contains(mu); }

  /// In-degree of μ.
  int arr(const Weight& mu) const {
    auto v = index_of(mu);
    if (!v) throw InvalidInput("weight " + mu.to_string() + " is not a vertex of the graph over " + base_.to_string());
    return in_degree_[*v];
  }
  int in_degree(std::size_t v) const { return in_degree_[v]; }

  /// Largest stage index among reversible labels, 0 if none.
  int stabilization_stage() const {
    int m = 0;
    for (const auto& e : edges_)
      if (auto idx = flip_index(e.label, rank())) m = std::max(m, *idx);
    return m;
  }

  std::string to_dot() const {
    std::string out = "digraph stage_" + stage_.to_string() + " {\n";
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      out += "  v" + std::to_string(v) + " [label=\"" + vertices_[v].to_string() + "\"];\n";
    for (const auto& e : edges_)
      out += "  v" + std::to_string(e.src) + " -> v" + std::to_string(e.dst) + " [label=\"" + e.label.to_string() +
             "\"];\n";
    out += "}\n";
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["base"] = base_.coords;
    j["stage"] = stage_.to_string();
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : vertices_) verts.push_back(v.coords);
    j["vertices"] = std::move(verts);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : edges_) {
      edges.push_back({{"src", e.src},
                       {"dst", e.dst},
                       {"label",
                        {{"level", e.label.level},
                         {"root", {e.label.finite.j, e.label.finite.k}},
                         {"sign", e.label.sign},
                         {"text", e.label.to_string()}}}});
    }
    j["edges"] = std::move(edges);
    return j;
  }

 private:
  Weight base_;
  Stage stage_;
  std::vector<Weight> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<int> in_degree_;
  std::map<Weight, std::size_t> index_;
};

/// Γ^stage on I(λ′).  Edges are listed by (higher, lower) vertex index pairs in
/// interval order.
inline TwistedGraph build_graph(const Weight& lambda_prime, Stage stage) {
  Rank rank(lambda_prime.rank());
  const int n = rank.value();
  std::vector<Weight> verts = build_interval(lambda_prime, rank);
  std::vector<GraphEdge> edges;
  for (std::size_t a = 0; a < verts.size(); ++a) {
    for (std::size_t b = a + 1; b < verts.size(); ++b) {
      auto line = root_line(verts[a], verts[b]);
      if (!line) continue;
      // Normalize to ν = μ − kβ with k > 0.
      std::size_t mu = a, nu = b;
      int k = line->k;
      if (k < 0) {
        std::swap(mu, nu);
        k = -k;
      }
      const Root beta = line->beta;
      const int p = pairing(verts[mu], beta);
      GraphEdge e;
      if (p >= k) {
        e = {nu, mu, AffineCoroot{p - k, beta, 1}};
      } else {
        e = {mu, nu, AffineCoroot{k - p, beta, -1}};
      }
      if (is_reversed(e.label, n, stage)) std::swap(e.src, e.dst);
      edges.push_back(e);
    }
  }
  return TwistedGraph(lambda_prime, stage, std::move(verts), std::move(edges));
}

/// Σ_{β ∉ Φ_{n−1}} max{k ≥ 0 : μ − kβ ≤ λ′} + Σ_{β ∈ Φ_{n−1}} ℓ^β(μ).
inline int arr_infinity_formula(const Weight& mu, const Weight& lambda_prime) {
  if (!bruhat_leq_dominant(mu, lambda_prime))
    throw InvalidInput("weight " + mu.to_string() + " is not below " + lambda_prime.to_string());
  const int n = mu.rank();
  int total = 0;
  for (const Root& beta : positive_roots(n)) {
    if (beta.in_levi(n)) {
      total += length_along(mu, beta);
      continue;
    }
    const Weight step = beta.vector(n);
    int k = 0;
    Weight cur = mu - step;
    while (bruhat_leq_dominant(cur, lambda_prime)) {
      ++k;
      cur = cur - step;
    }
    total += k;
  }
  return total;
}

}  // namespace atomcharge
