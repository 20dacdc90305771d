#pragma once

// The crystal B(λ) of type A_n realized on semistandard Young tableaux.
//
// Reading word: rows from the bottom row up, each row left to right.  For the
// index i a letter i is a closing bracket and i+1 an opening bracket; an i+1
// standing left of an i cancels with it.  What remains is i^φ (i+1)^ε, f_i
// turns the rightmost surviving i into i+1 and e_i turns the leftmost
// surviving i+1 into i.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomcharge/errors.hpp"
#include "atomcharge/root_data.hpp"

namespace atomcharge {

using ElementId = std::int32_t;

inline constexpr std::size_t kDefaultMaxElements = 2'000'000;

enum class Dir { f, e };

/// A partition padded with zeros to length n+1.
class Shape {
 public:
  Shape(std::vector<int> parts, Rank rank) : parts_(std::move(parts)) {
    const auto letters = static_cast<std::size_t>(rank.letters());
    while (parts_.size() > letters && parts_.back() == 0) parts_.pop_back();
    if (parts_.size() > letters)
      throw InvalidInput("partition has more than " + std::to_string(letters) + " nonzero parts");
    for (std::size_t a = 0; a < parts_.size(); ++a) {
      if (parts_[a] < 0) throw InvalidInput("partition parts must be nonnegative");
      if (a > 0 && parts_[a] > parts_[a - 1]) throw InvalidInput("partition parts must be weakly decreasing");
    }
    parts_.resize(letters, 0);
  }

  const std::vector<int>& parts() const { return parts_; }
  int rank() const { return static_cast<int>(parts_.size()) - 1; }
  Weight weight() const { return Weight(parts_); }
  int size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<int> parts_;
};

struct StringStats {
  int eps = 0;
  int phi = 0;
  friend bool operator==(const StringStats&, const StringStats&) = default;
};

/// Semistandard tableau; rows[r] is row r+1 from the top, entries 1..n+1.
struct Tableau {
  std::vector<std::vector<int>> rows;

  std::vector<int> reading_word() const {
    std::vector<int> word;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) word.insert(word.end(), it->begin(), it->end());
    return word;
  }

  /// Inverse of reading_word for this tableau's row lengths.
  Tableau with_reading_word(std::span<const int> word) const {
    Tableau t = *this;
    std::size_t pos = 0;
    for (auto it = t.rows.rbegin(); it != t.rows.rend(); ++it)
      for (int& v : *it) v = word[pos++];
    return t;
  }

  std::vector<int> flat() const {
    std::vector<int> out;
    for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
  }

  Weight content(int n) const {
    Weight w(std::vector<int>(static_cast<std::size_t>(n + 1), 0));
    for (const auto& r : rows)
      for (int v : r) ++w[static_cast<std::size_t>(v - 1)];
    return w;
  }

  bool is_semistandard(int n) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r > 0 && rows[r].size() > rows[r - 1].size()) return false;
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        int v = rows[r][c];
        if (v < 1 || v > n + 1) return false;
        if (c > 0 && rows[r][c - 1] > v) return false;
        if (r > 0 && rows[r - 1][c] >= v) return false;
      }
    }
    return true;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r) s += "/";
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (c) s += " ";
        s += std::to_string(rows[r][c]);
      }
    }
    return s + "]";
  }

  friend bool operator==(const Tableau&, const Tableau&) = default;
};

namespace detail {

struct Bracketing {
  std::vector<std::size_t> free_lower;  // positions of unmatched i, left to right
  std::vector<std::size_t> free_upper;  // positions of unmatched i+1, left to right
};

inline Bracketing bracket(std::span<const int> word, int i) {
  Bracketing b;
  std::vector<std::size_t> open;
  for (std::size_t p = 0; p < word.size(); ++p) {
    if (word[p] == i + 1) {
      open.push_back(p);
    } else if (word[p] == i) {
      if (open.empty()) {
        b.free_lower.push_back(p);
      } else {
        open.pop_back();
      }
    }
  }
  b.free_upper = std::move(open);
  return b;
}

}  // namespace detail

/// Signature-rule operator on a bare tableau.
inline std::optional<Tableau> tableau_op(Dir dir, int i, const Tableau& t) {
  std::vector<int> word = t.reading_word();
  auto b = detail::bracket(word, i);
  if (dir == Dir::f) {
    if (b.free_lower.empty()) return std::nullopt;
    word[b.free_lower.back()] = i + 1;
  } else {
    if (b.free_upper.empty()) return std::nullopt;
    word[b.free_upper.front()] = i;
  }
  return t.with_reading_word(word);
}

inline StringStats tableau_stats(int i, const Tableau& t) {
  auto b = detail::bracket(t.reading_word(), i);
  return {static_cast<int>(b.free_upper.size()), static_cast<int>(b.free_lower.size())};
}

/// All semistandard tableaux of the shape with entries ≤ n+1, in
/// lexicographic order of their row-major entry sequence.
inline std::vector<Tableau> enumerate_tableaux(const Shape& shape, std::size_t max_elements = kDefaultMaxElements) {
  const int n = shape.rank();
  std::vector<std::size_t> lens;
  for (int p : shape.parts())
    if (p > 0) lens.push_back(static_cast<std::size_t>(p));
  std::vector<int> col_height(lens.empty() ? 0 : lens.front(), 0);
  for (std::size_t len : lens)
    for (std::size_t c = 0; c < len; ++c) ++col_height[c];

  std::vector<Tableau> out;
  Tableau cur;
  for (std::size_t len : lens) cur.rows.emplace_back(len, 0);
  if (lens.empty()) {
    out.push_back(cur);
    return out;
  }

  auto recurse = [&](auto&& self, std::size_t r, std::size_t c) -> void {
    if (r == lens.size()) {
      if (out.size() >= max_elements)
        throw SizeLimitExceeded("crystal has more than " + std::to_string(max_elements) +
                                " elements (raise --max-elements to allow more)");
      out.push_back(cur);
      return;
    }
    std::size_t nr = r, nc = c + 1;
    if (nc == lens[r]) {
      nr = r + 1;
      nc = 0;
    }
    int lo = static_cast<int>(r) + 1;
    if (c > 0) lo = std::max(lo, cur.rows[r][c - 1]);
    if (r > 0) lo = std::max(lo, cur.rows[r - 1][c] + 1);
    int hi = n + 1 - (col_height[c] - 1 - static_cast<int>(r));
    for (int v = lo; v <= hi; ++v) {
      cur.rows[r][c] = v;
      self(self, nr, nc);
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

/// B(λ) with precomputed Kashiwara operator tables, string lengths and the
/// simple-reflection action.  Immutable once constructed.
class Crystal {
 public:
  Crystal(Rank rank, Shape shape, std::vector<Tableau> elements, std::vector<Weight> weights,
          std::vector<std::vector<ElementId>> f_table)
      : n_(rank.value()),
        shape_(std::move(shape)),
        elements_(std::move(elements)),
        weights_(std::move(weights)),
        f_(std::move(f_table)) {
    if (shape_.rank() != n_) throw InvalidInput("shape rank does not match crystal rank");
    if (weights_.size() != elements_.size()) throw InvalidInput("one weight per element required");
    if (f_.size() != static_cast<std::size_t>(n_)) throw InvalidInput("one operator table per simple root required");
    const auto count = static_cast<ElementId>(elements_.size());
    e_.assign(f_.size(), std::vector<ElementId>(elements_.size(), kNone));
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (f_[i].size() != elements_.size()) throw InvalidInput("operator table size mismatch");
      for (ElementId x = 0; x < count; ++x) {
        ElementId y = f_[i][static_cast<std::size_t>(x)];
        if (y == kNone) continue;
        if (y < 0 || y >= count) throw InvalidInput("operator table refers to an unknown element");
        e_[i][static_cast<std::size_t>(y)] = x;
      }
    }
    flats_.reserve(elements_.size());
    for (const auto& t : elements_) flats_.push_back(t.flat());
    sorted_ = std::is_sorted(flats_.begin(), flats_.end());
    compute_strings();
  }

  int rank() const { return n_; }
  const Shape& shape() const { return shape_; }
  std::size_t size() const { return elements_.size(); }
  const Tableau& tableau(ElementId x) const { return elements_[idx(x)]; }
  const Weight& weight(ElementId x) const { return weights_[idx(x)]; }

  std::optional<ElementId> apply(Dir dir, int i, ElementId x) const {
    check_index(i);
    ElementId y = (dir == Dir::f ? f_ : e_)[static_cast<std::size_t>(i - 1)][idx(x)];
    if (y == kNone) return std::nullopt;
    return y;
  }
  std::optional<ElementId> f(int i, ElementId x) const { return apply(Dir::f, i, x); }
  std::optional<ElementId> e(int i, ElementId x) const { return apply(Dir::e, i, x); }

  StringStats stats(int i, ElementId x) const {
    check_index(i);
    return stats_[static_cast<std::size_t>(i - 1)][idx(x)];
  }

  /// s_i(x): reverses the α_i-string through x.
  ElementId reflect(int i, ElementId x) const {
    check_index(i);
    return s_[static_cast<std::size_t>(i - 1)][idx(x)];
  }

  std::optional<ElementId> find(const Tableau& t) const {
    std::vector<int> key = t.flat();
    if (sorted_) {
      auto it = std::lower_bound(flats_.begin(), flats_.end(), key);
      if (it != flats_.end() && *it == key && elements_[static_cast<std::size_t>(it - flats_.begin())] == t)
        return static_cast<ElementId>(it - flats_.begin());
      return std::nullopt;
    }
    for (std::size_t a = 0; a < elements_.size(); ++a)
      if (elements_[a] == t) return static_cast<ElementId>(a);
    return std::nullopt;
  }

  /// Elements killed by every e_i.
  std::vector<ElementId> highest_weight_elements() const {
    std::vector<ElementId> out;
    for (ElementId x = 0; x < static_cast<ElementId>(size()); ++x) {
      bool top = true;
      for (int i = 1; i <= n_ && top; ++i) top = !e(i, x).has_value();
      if (top) out.push_back(x);
    }
    return out;
  }

  const std::vector<ElementId>& f_table(int i) const { return f_[static_cast<std::size_t>(i - 1)]; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["rank"] = n_;
    j["shape"] = shape_.parts();
    nlohmann::json elems = nlohmann::json::array();
    for (std::size_t a = 0; a < elements_.size(); ++a) {
      elems.push_back({{"id", a}, {"rows", elements_[a].rows}, {"weight", weights_[a].coords}});
    }
    j["elements"] = std::move(elems);
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t i = 0; i < f_.size(); ++i)
      for (std::size_t a = 0; a < f_[i].size(); ++a)
        if (f_[i][a] != kNone) edges.push_back({{"i", i + 1}, {"from", a}, {"to", f_[i][a]}});
    j["edges"] = std::move(edges);
    return j;
  }

  /// Rebuilds a crystal from its JSON dump without recomputing operators.
  static Crystal from_json(const nlohmann::json& j) {
    try {
      Rank rank(j.at("rank").get<int>());
      Shape shape(j.at("shape").get<std::vector<int>>(), rank);
      std::vector<Tableau> elements;
      std::vector<Weight> weights;
      const auto& elems = j.at("elements");
      for (std::size_t a = 0; a < elems.size(); ++a) {
        const auto& el = elems[a];
        if (el.at("id").get<std::size_t>() != a) throw InvalidInput("element ids must be 0..N-1 in order");
        Tableau t{el.at("rows").get<std::vector<std::vector<int>>>()};
        Weight w(el.at("weight").get<std::vector<int>>());
        if (w.size() != static_cast<std::size_t>(rank.letters())) throw InvalidInput("weight length mismatch");
        elements.push_back(std::move(t));
        weights.push_back(std::move(w));
      }
      std::vector<std::vector<ElementId>> f(static_cast<std::size_t>(rank.value()),
                                            std::vector<ElementId>(elements.size(), kNone));
      for (const auto& edge : j.at("edges")) {
        int i = edge.at("i").get<int>();
        auto from = edge.at("from").get<std::int64_t>();
        auto to = edge.at("to").get<std::int64_t>();
        const auto count = static_cast<std::int64_t>(elements.size());
        if (i < 1 || i > rank.value() || from < 0 || from >= count || to < 0 || to >= count)
          throw InvalidInput("edge out of range");
        f[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(from)] = static_cast<ElementId>(to);
      }
      return Crystal(rank, std::move(shape), std::move(elements), std::move(weights), std::move(f));
    } catch (const nlohmann::json::exception& ex) {
      throw InvalidInput(std::string("malformed crystal JSON: ") + ex.what());
    }
  }

 private:
  static constexpr ElementId kNone = -1;

  std::size_t idx(ElementId x) const {
    if (x < 0 || static_cast<std::size_t>(x) >= elements_.size()) throw InvalidInput("unknown crystal element id");
    return static_cast<std::size_t>(x);
  }
  void check_index(int i) const {
    if (i < 1 || i > n_) throw InvalidInput("simple root index " + std::to_string(i) + " outside 1..n");
  }

  int walk(const std::vector<ElementId>& table, ElementId x) const {
    int steps = 0;
    while ((x = table[static_cast<std::size_t>(x)]) != kNone) {
      if (++steps > static_cast<int>(elements_.size())) throw InternalError("operator chain does not terminate");
    }
    return steps;
  }

  void compute_strings() {
    stats_.assign(f_.size(), std::vector<StringStats>(elements_.size()));
    s_.assign(f_.size(), std::vector<ElementId>(elements_.size(), kNone));
    for (std::size_t i = 0; i < f_.size(); ++i) {
      for (std::size_t a = 0; a < elements_.size(); ++a) {
        auto x = static_cast<ElementId>(a);
        StringStats st{walk(e_[i], x), walk(f_[i], x)};
        stats_[i][a] = st;
        int m = st.phi - st.eps;
        ElementId y = x;
        const auto& table = m >= 0 ? f_[i] : e_[i];
        for (int step = 0; step < (m >= 0 ? m : -m); ++step) y = table[static_cast<std::size_t>(y)];
        s_[i][a] = y;
      }
    }
  }

  int n_;
  Shape shape_;
  std::vector<Tableau> elements_;
  std::vector<Weight> weights_;
  std::vector<std::vector<ElementId>> f_;
  std::vector<std::vector<ElementId>> e_;
  std::vector<std::vector<StringStats>> stats_;
  std::vector<std::vector<ElementId>> s_;
  std::vector<std::vector<int>> flats_;
  bool sorted_ = false;
};

/// Materializes B(λ): enumerates tableaux, then fills operator tables by the
/// signature rule.
inline Crystal generate(const Shape& shape, Rank rank, std::size_t max_elements = kDefaultMaxElements) {
  if (shape.rank() != rank.value()) throw InvalidInput("shape was built for a different rank");
  const int n = rank.value();
  std::vector<Tableau> elements = enumerate_tableaux(shape, max_elements);
  std::vector<Weight> weights;
  weights.reserve(elements.size());
  for (const auto& t : elements) weights.push_back(t.content(n));

  std::vector<std::vector<int>> flats;
  flats.reserve(elements.size());
  for (const auto& t : elements) flats.push_back(t.flat());

  std::vector<std::vector<ElementId>> f(static_cast<std::size_t>(n), std::vector<ElementId>(elements.size(), -1));
  for (int i = 1; i <= n; ++i) {
    for (std::size_t a = 0; a < elements.size(); ++a) {
      auto next = tableau_op(Dir::f, i, elements[a]);
      if (!next) continue;
      auto key = next->flat();
      auto it = std::lower_bound(flats.begin(), flats.end(), key);
      if (it == flats.end() || *it != key) throw InternalError("f_" + std::to_string(i) + " left the set of tableaux");
      f[static_cast<std::size_t>(i - 1)][a] = static_cast<ElementId>(it - flats.begin());
    }
  }
  return Crystal(rank, shape, std::move(elements), std::move(weights), std::move(f));
}

inline std::optional<ElementId> crystal_op(const Crystal& c, Dir dir, int i, ElementId x) { return c.apply(dir, i, x); }

inline StringStats string_stats(const Crystal& c, int i, ElementId x) { return c.stats(i, x); }

/// Applies a sequence of simple reflections, rightmost first.
inline ElementId apply_word(const Crystal& c, std::span<const int> word, ElementId x) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = c.reflect(*it, x);
  return x;
}

/// w · x through the canonical reduced word of w.
inline ElementId weyl_act(const Crystal& c, const WeylElement& w, ElementId x) {
  if (w.rank() != c.rank()) throw InvalidInput("Weyl element rank does not match crystal rank");
  std::vector<int> word = w.reduced_word();
  return apply_word(c, word, x);
}

namespace detail {

/// s_j s_{j+1} ... s_{k-1}, as a word.
inline std::vector<int> root_twist_word(const Root& alpha) {
  std::vector<int> word;
  for (int i = alpha.j; i < alpha.k; ++i) word.push_back(i);
  return word;
}

inline std::vector<int> reversed(std::vector<int> word) {
  std::reverse(word.begin(), word.end());
  return word;
}

}  // namespace detail

/// Modified operator f_α = w f_k w⁻¹ (or e_α), w = s_j ... s_{k-1}.
inline std::optional<ElementId> root_op(const Crystal& c, Dir dir, const Root& alpha, ElementId x) {
  check_root(alpha, c.rank());
  auto w = detail::root_twist_word(alpha);
  ElementId y = apply_word(c, detail::reversed(w), x);
  auto z = c.apply(dir, alpha.k, y);
  if (!z) return std::nullopt;
  return apply_word(c, w, *z);
}

/// ε_α(x) = ε_k(w⁻¹x), φ_α(x) = φ_k(w⁻¹x).
inline StringStats root_string_stats(const Crystal& c, const Root& alpha, ElementId x) {
  check_root(alpha, c.rank());
  auto w = detail::root_twist_word(alpha);
  return c.stats(alpha.k, apply_word(c, detail::reversed(w), x));
}

/// Repeated application; nullopt as soon as the operator annihilates.
inline std::optional<ElementId> root_op_power(const Crystal& c, Dir dir, const Root& alpha, int power, ElementId x) {
  std::optional<ElementId> y = x;
  for (int step = 0; step < power && y; ++step) y = root_op(c, dir, alpha, *y);
  return y;
}

/// u f_n u⁻¹ (or u e_n u⁻¹) for an arbitrary Weyl element u.
inline std::optional<ElementId> conjugated_last_op(const Crystal& c, Dir dir, const WeylElement& u, ElementId x) {
  ElementId y = weyl_act(c, u.inverse(), x);
  auto z = c.apply(dir, c.rank(), y);
  if (!z) return std::nullopt;
  return weyl_act(c, u, *z);
}

/// The permutation sending n ↦ j, n+1 ↦ k+1 (1-based letters) and keeping the
/// remaining letters in relative order; it maps α_n to α_{j,k}.
inline WeylElement tilde_conjugator(const Root& alpha, int n) {
  check_root(alpha, n);
  std::vector<int> images(static_cast<std::size_t>(n + 1));
  std::vector<int> rest;
  for (int a = 0; a <= n; ++a)
    if (a != alpha.j - 1 && a != alpha.k) rest.push_back(a);
  for (int a = 0; a < n - 1; ++a) images[static_cast<std::size_t>(a)] = rest[static_cast<std::size_t>(a)];
  images[static_cast<std::size_t>(n - 1)] = alpha.j - 1;
  images[static_cast<std::size_t>(n)] = alpha.k;
  return WeylElement::from_images(std::move(images));
}

/// f̃_α = u f_n u⁻¹ with u(α_n) = α.
inline std::optional<ElementId> tilde_op(const Crystal& c, Dir dir, const Root& alpha, ElementId x) {
  return conjugated_last_op(c, dir, tilde_conjugator(alpha, c.rank()), x);
}

}  // namespace atomcharge
