#pragma once

// Type A_n root and weight combinatorics in GL_{n+1} coordinates.
//
// A weight is an integer vector of length n+1; the simple root α_i is
// e_i - e_{i+1}.  All weights entering one computation are assumed to share
// their coordinate sum, so SL-weight equality is plain vector equality.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "atomcharge/errors.hpp"
#include "atomcharge/half_laurent.hpp"

namespace atomcharge {

/// Rank n of the root system A_n (group SL_{n+1}).
class Rank {
 public:
  explicit Rank(int n) : n_(n) {
    if (n < 1) throw InvalidInput("rank must be at least 1, got " + std::to_string(n));
  }
  int value() const { return n_; }
  int letters() const { return n_ + 1; }
  friend bool operator==(Rank, Rank) = default;

 private:
  int n_;
};

struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}
  Weight(std::initializer_list<int> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  int rank() const { return static_cast<int>(coords.size()) - 1; }
  int operator[](std::size_t a) const { return coords[a]; }
  int& operator[](std::size_t a) { return coords[a]; }
  int sum() const { return std::accumulate(coords.begin(), coords.end(), 0); }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  friend Weight operator+(Weight a, const Weight& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a.coords[i] += b.coords[i];
    return a;
  }
  friend Weight operator-(Weight a, const Weight& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a.coords[i] -= b.coords[i];
    return a;
  }
  friend Weight operator*(int k, Weight a) {
    for (int& c : a.coords) c *= k;
    return a;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coords[i]);
    }
    return s + ")";
  }
};

/// Positive root α_{j,k} = α_j + ... + α_k, 1 ≤ j ≤ k ≤ n.
struct Root {
  int j = 1;
  int k = 1;

  bool is_simple() const { return j == k; }
  /// True when the root lies in the Levi subsystem spanned by α_1..α_{n-1}.
  bool in_levi(int n) const { return k <= n - 1; }
  /// As a vector: +1 at position j, -1 at position k+1 (1-based).
  Weight vector(int n) const {
    Weight w(std::vector<int>(static_cast<std::size_t>(n + 1), 0));
    w[static_cast<std::size_t>(j - 1)] = 1;
    w[static_cast<std::size_t>(k)] = -1;
    return w;
  }
  std::string to_string() const {
    if (j == k) return "α_" + std::to_string(j);
    return "α_{" + std::to_string(j) + "," + std::to_string(k) + "}";
  }
  friend auto operator<=>(const Root&, const Root&) = default;
};

inline void check_root(const Root& beta, int n) {
  if (beta.j < 1 || beta.j > beta.k || beta.k > n)
    throw InvalidInput("root " + beta.to_string() + " is not a positive root of A_" + std::to_string(n));
}

/// Positive roots ordered by (j, k).
inline std::vector<Root> positive_roots(int n) {
  std::vector<Root> roots;
  for (int j = 1; j <= n; ++j)
    for (int k = j; k <= n; ++k) roots.push_back({j, k});
  return roots;
}

/// ⟨μ, β∨⟩.
inline int pairing(const Weight& mu, const Root& beta) {
  return mu[static_cast<std::size_t>(beta.j - 1)] - mu[static_cast<std::size_t>(beta.k)];
}

/// ⟨μ, ρ∨⟩ = ½ Σ_{β>0} ⟨μ, β∨⟩.
inline HalfInt rho_pairing(const Weight& mu) {
  std::int64_t doubled = 0;
  for (const Root& beta : positive_roots(mu.rank())) doubled += pairing(mu, beta);
  return HalfInt::from_doubled(doubled);
}

/// Permutation of {0..n}; acts on weights by sending e_a to e_{images[a]}.
class WeylElement {
 public:
  WeylElement() = default;

  static WeylElement identity(int n) {
    WeylElement w;
    w.images_.resize(static_cast<std::size_t>(n + 1));
    std::iota(w.images_.begin(), w.images_.end(), 0);
    return w;
  }
  /// Simple reflection s_i, 1 ≤ i ≤ n.
  static WeylElement simple(int n, int i) {
    if (i < 1 || i > n) throw InvalidInput("simple reflection index out of range");
    WeylElement w = identity(n);
    std::swap(w.images_[static_cast<std::size_t>(i - 1)], w.images_[static_cast<std::size_t>(i)]);
    return w;
  }
  static WeylElement longest(int n) {
    WeylElement w = identity(n);
    std::reverse(w.images_.begin(), w.images_.end());
    return w;
  }
  static WeylElement from_images(std::vector<int> images) {
    std::vector<int> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t a = 0; a < sorted.size(); ++a)
      if (sorted[a] != static_cast<int>(a)) throw InvalidInput("not a permutation of 0..n");
    if (images.size() < 2) throw InvalidInput("Weyl element needs n >= 1");
    WeylElement w;
    w.images_ = std::move(images);
    return w;
  }
  /// s_{word[0]} s_{word[1]} ... s_{word.back()}.
  static WeylElement from_word(int n, std::span<const int> word) {
    WeylElement w = identity(n);
    for (int i : word) w = w * simple(n, i);
    return w;
  }
  /// All (n+1)! elements in lexicographic order of images.
  static std::vector<WeylElement> all(int n) {
    std::vector<WeylElement> out;
    WeylElement w = identity(n);
    do {
      out.push_back(w);
    } while (std::next_permutation(w.images_.begin(), w.images_.end()));
    return out;
  }

  int rank() const { return static_cast<int>(images_.size()) - 1; }
  const std::vector<int>& images() const { return images_; }
  int image(int a) const { return images_[static_cast<std::size_t>(a)]; }

  /// Composition (this ∘ other).
  friend WeylElement operator*(const WeylElement& u, const WeylElement& v) {
    WeylElement w;
    w.images_.resize(v.images_.size());
    for (std::size_t a = 0; a < v.images_.size(); ++a)
      w.images_[a] = u.images_[static_cast<std::size_t>(v.images_[a])];
    return w;
  }
  friend bool operator==(const WeylElement&, const WeylElement&) = default;

  WeylElement inverse() const {
    WeylElement w;
    w.images_.resize(images_.size());
    for (std::size_t a = 0; a < images_.size(); ++a) w.images_[static_cast<std::size_t>(images_[a])] = static_cast<int>(a);
    return w;
  }

  /// Canonical reduced word (i_1, ..., i_k) with w = s_{i_1} ... s_{i_k},
  /// obtained by bubble-sorting the one-line notation.
  std::vector<int> reduced_word() const {
    std::vector<int> line = images_;
    std::vector<int> peeled;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a + 1 < line.size(); ++a) {
        if (line[a] > line[a + 1]) {
          std::swap(line[a], line[a + 1]);
          peeled.push_back(static_cast<int>(a + 1));
          changed = true;
        }
      }
    }
    // w s_{p_1} s_{p_2} ... s_{p_k} = id, so w = s_{p_k} ... s_{p_1}.
    std::reverse(peeled.begin(), peeled.end());
    return peeled;
  }

  int length() const {
    int inv = 0;
    for (std::size_t a = 0; a < images_.size(); ++a)
      for (std::size_t b = a + 1; b < images_.size(); ++b)
        if (images_[a] > images_[b]) ++inv;
    return inv;
  }

  Weight apply(const Weight& mu) const {
    Weight out(std::vector<int>(mu.size(), 0));
    for (std::size_t a = 0; a < mu.size(); ++a) out[static_cast<std::size_t>(images_[a])] = mu[a];
    return out;
  }

 private:
  std::vector<int> images_;
};

inline Weight weyl_apply_weight(const WeylElement& w, const Weight& mu) {
  if (static_cast<std::size_t>(w.rank() + 1) != mu.size()) throw InvalidInput("Weyl element and weight have different ranks");
  return w.apply(mu);
}

/// Finite reflection s_β.
inline Weight reflect(const Weight& mu, const Root& beta) {
  Weight out = mu;
  std::swap(out[static_cast<std::size_t>(beta.j - 1)], out[static_cast<std::size_t>(beta.k)]);
  return out;
}

inline bool is_dominant(const Weight& mu) {
  for (std::size_t a = 0; a + 1 < mu.size(); ++a)
    if (mu[a] < mu[a + 1]) return false;
  return true;
}

/// (μ⁺, w) with μ⁺ weakly decreasing and w(μ) = μ⁺; w is the stable sorting
/// permutation.
inline std::pair<Weight, WeylElement> dominant_representative(const Weight& mu) {
  std::vector<int> order(mu.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return mu[static_cast<std::size_t>(a)] > mu[static_cast<std::size_t>(b)]; });
  std::vector<int> images(mu.size());
  Weight plus(std::vector<int>(mu.size(), 0));
  for (std::size_t p = 0; p < order.size(); ++p) {
    images[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
    plus[p] = mu[static_cast<std::size_t>(order[p])];
  }
  return {plus, WeylElement::from_images(std::move(images))};
}

inline Weight dominant_of(Weight mu) {
  std::sort(mu.coords.begin(), mu.coords.end(), std::greater<>());
  return mu;
}

/// Dominance order on dominant weights of equal total: every prefix sum of
/// `lower` is at most that of `upper`.
inline bool dominated_by(const Weight& lower, const Weight& upper) {
  if (lower.size() != upper.size() || lower.sum() != upper.sum()) return false;
  int a = 0, b = 0;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    a += lower[i];
    b += upper[i];
    if (a > b) return false;
  }
  return true;
}

/// μ ≤ λ in the Bruhat order on weights, for dominant λ: μ lies in the
/// convex hull of W·λ and in the same root-lattice coset.
inline bool bruhat_leq_dominant(const Weight& mu, const Weight& lambda) {
  if (mu.size() != lambda.size()) throw InvalidInput("weights " + mu.to_string() + " and " + lambda.to_string() + " have different lengths");
  if (!is_dominant(lambda)) throw InvalidInput("weight " + lambda.to_string() + " is not dominant");
  if (mu.sum() != lambda.sum())
    throw InvalidInput("weights " + mu.to_string() + " and " + lambda.to_string() + " lie in different cosets");
  return dominated_by(dominant_of(mu), lambda);
}

/// {μ : μ ≤ λ} for dominant λ, in decreasing lexicographic order.  Every
/// coordinate of such μ lies in [λ_{n+1}, λ_1], so a bounded box search is
/// exhaustive.
inline std::vector<Weight> lower_interval(const Weight& lambda) {
  if (lambda.size() < 2) throw InvalidInput("weight must have at least two coordinates");
  if (!is_dominant(lambda)) throw InvalidInput("weight " + lambda.to_string() + " is not dominant");
  const int lo = lambda.coords.back();
  const int hi = lambda.coords.front();
  const int total = lambda.sum();
  const std::size_t len = lambda.size();
  std::vector<Weight> out;
  Weight cur(std::vector<int>(len, lo));
  auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
    const int slots = static_cast<int>(len - pos - 1);
    if (pos + 1 == len) {
      if (remaining < lo || remaining > hi) return;
      cur[pos] = remaining;
      if (dominated_by(dominant_of(cur), lambda)) out.push_back(cur);
      return;
    }
    for (int v = hi; v >= lo; --v) {
      const int rest = remaining - v;
      if (rest < slots * lo || rest > slots * hi) continue;
      cur[pos] = v;
      self(self, pos + 1, rest);
    }
  };
  recurse(recurse, 0, total);
  return out;
}

/// ℓ^β(μ).
inline int length_along(const Weight& mu, const Root& beta) {
  int p = pairing(mu, beta);
  return p >= 0 ? p : -p - 1;
}

/// ℓ(μ) = Σ_{β>0} ℓ^β(μ).
inline int length(const Weight& mu) {
  int total = 0;
  for (const Root& beta : positive_roots(mu.rank())) total += length_along(mu, beta);
  return total;
}

enum class LineOrder { Lower, Greater, Equal };

/// Decomposition μ − ν = kβ with β positive, if it exists.
struct RootLine {
  Root beta;
  int k = 0;
};

inline std::optional<RootLine> root_line(const Weight& mu, const Weight& nu) {
  if (mu.size() != nu.size()) return std::nullopt;
  int first = -1, second = -1;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (mu[a] == nu[a]) continue;
    if (first < 0) {
      first = static_cast<int>(a);
    } else if (second < 0) {
      second = static_cast<int>(a);
    } else {
      return std::nullopt;
    }
  }
  if (second < 0) return std::nullopt;
  int k = mu[static_cast<std::size_t>(first)] - nu[static_cast<std::size_t>(first)];
  if (mu[static_cast<std::size_t>(second)] - nu[static_cast<std::size_t>(second)] != -k) return std::nullopt;
  return RootLine{Root{first + 1, second}, k};
}

/// Compares two weights on a common root line: Lower means ν < μ, Greater
/// means μ < ν.  For ν = μ − kβ, ν < μ iff ⟨μ,β∨⟩ ≥ k > 0 or ⟨μ,β∨⟩ < k < 0.
inline LineOrder line_compare(const Weight& mu, const Weight& nu) {
  if (mu == nu) return LineOrder::Equal;
  auto line = root_line(mu, nu);
  if (!line) throw InvalidInput(mu.to_string() + " and " + nu.to_string() + " do not lie on a common root line");
  int p = pairing(mu, line->beta);
  int k = line->k;
  bool lower = (p >= k && k > 0) || (p < k && k < 0);
  return lower ? LineOrder::Lower : LineOrder::Greater;
}

}  // namespace atomcharge
