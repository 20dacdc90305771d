#pragma once

// Charge and recharge statistics on B(λ), Kostka–Foulkes polynomials by four
// independent routes, swapping maps and the atomic Hecke expansion.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "atomcharge/affine_graph.hpp"
#include "atomcharge/atoms.hpp"
#include "atomcharge/crystal.hpp"
#include "atomcharge/errors.hpp"
#include "atomcharge/half_laurent.hpp"
#include "atomcharge/root_data.hpp"

namespace atomcharge {

/// c(x) = Z(x) − ½ℓ(wt(x)).
inline HalfInt charge(const Crystal& c, ElementId x) {
  return atomic_number(c, x) - HalfInt::from_doubled(length(c.weight(x)));
}

/// In-degree tables of the twisted graphs over each atom highest weight.
/// Only the stage-0 graph is stored; later stages are derived from its labels.
class GraphCache {
 public:
  const TwistedGraph& base_graph(const Weight& base) {
    auto it = bases_.find(base);
    if (it == bases_.end()) it = bases_.emplace(base, build_graph(base, Stage::finite(0))).first;
    return it->second;
  }

  const std::vector<int>& in_degrees(const Weight& base, Stage stage) {
    const TwistedGraph& g = base_graph(base);
    const int m = std::min(stage.is_infinite() ? g.stabilization_stage() : stage.value(), g.stabilization_stage());
    auto key = std::make_pair(base, m);
    auto it = degrees_.find(key);
    if (it == degrees_.end()) {
      std::vector<int> deg(g.vertices().size(), 0);
      for (const auto& e : g.edges()) ++deg[is_reversed(e.label, g.rank(), Stage::finite(m)) ? e.src : e.dst];
      it = degrees_.emplace(key, std::move(deg)).first;
    }
    return it->second;
  }

  int arr(const Weight& base, Stage stage, const Weight& mu) {
    auto v = base_graph(base).index_of(mu);
    if (!v) throw InvalidInput("weight " + mu.to_string() + " is not below " + base.to_string());
    return in_degrees(base, stage)[*v];
  }

  int stabilization_stage(const Weight& base) { return base_graph(base).stabilization_stage(); }

 private:
  std::map<Weight, TwistedGraph> bases_;
  std::map<std::pair<Weight, int>, std::vector<int>> degrees_;
};

/// r_m(x) = Z(x) − Arr_m(wt(x)) over the highest weight of x's atom.
inline HalfInt recharge(const Crystal& c, const AtomDecomposition& d, ElementId x, Stage stage, GraphCache& graphs) {
  const Atom& atom = d.atom_of(x);
  return atom.z - HalfInt::integer(graphs.arr(atom.highest_weight, stage, c.weight(x)));
}

inline HalfInt recharge(const Crystal& c, const AtomDecomposition& d, ElementId x, Stage stage) {
  GraphCache graphs;
  return recharge(c, d, x, stage, graphs);
}

struct RechargeTable {
  Stage stage = Stage::finite(0);
  std::vector<HalfInt> values;  // indexed by element id
};

inline RechargeTable recharge_table(const Crystal& c, const AtomDecomposition& d, Stage stage, GraphCache& graphs) {
  RechargeTable t{stage, {}};
  t.values.reserve(c.size());
  for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x) t.values.push_back(recharge(c, d, x, stage, graphs));
  return t;
}

inline RechargeTable recharge_table(const Crystal& c, const AtomDecomposition& d, Stage stage) {
  GraphCache graphs;
  return recharge_table(c, d, stage, graphs);
}

/// Largest stabilization stage over all atoms of the decomposition.
inline int max_stabilization_stage(const AtomDecomposition& d, GraphCache& graphs) {
  int m = 0;
  for (const auto& a : d.atoms) m = std::max(m, graphs.stabilization_stage(a.highest_weight));
  return m;
}

// ---------------------------------------------------------------------------
// Classical Lascoux–Schützenberger charge

/// Charge of a word whose content is a partition.  Standard subwords are
/// peeled off by scanning leftwards cyclically for 1, 2, 3, …
inline std::int64_t ls_word_charge(std::span<const int> word) {
  std::vector<int> content;
  for (int v : word) {
    if (v < 1) throw InvalidInput("word letters must be positive");
    if (static_cast<std::size_t>(v) > content.size()) content.resize(static_cast<std::size_t>(v), 0);
    ++content[static_cast<std::size_t>(v - 1)];
  }
  for (std::size_t a = 1; a < content.size(); ++a)
    if (content[a] > content[a - 1]) throw InvalidInput("word content is not a partition");

  std::vector<int> letters(word.begin(), word.end());
  std::vector<bool> used(letters.size(), false);
  std::size_t remaining = letters.size();
  std::int64_t total = 0;
  while (remaining > 0) {
    int top = 0;
    for (std::size_t p = 0; p < letters.size(); ++p)
      if (!used[p]) top = std::max(top, letters[p]);
    // Start just right of the end so the first leftward step lands on the last letter.
    std::size_t pos = letters.size();
    int index = 0;
    for (int r = 1; r <= top; ++r) {
      const std::size_t len = letters.size();
      std::optional<std::size_t> found;
      bool wrapped = false;
      for (std::size_t step = 1; step <= len; ++step) {
        std::size_t q = (pos + len - step) % len;
        if (r > 1 && q >= pos) wrapped = true;
        if (!used[q] && letters[q] == r) {
          found = q;
          break;
        }
      }
      if (!found) throw InternalError("standard subword extraction ran out of letters");
      if (r > 1) {
        if (wrapped) ++index;
        total += index;
      }
      used[*found] = true;
      --remaining;
      pos = *found;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Averaged string statistic

struct GammaValue {
  std::int64_t raw = 0;  // Σ_σ Σ_i i·min(ε_i, φ_i)(σx)
  HalfInt value;
};

inline std::int64_t factorial(int m) {
  std::int64_t f = 1;
  for (int a = 2; a <= m; ++a) f *= a;
  return f;
}

inline GammaValue llt_gamma_full(const Crystal& c, ElementId x, const std::vector<WeylElement>& group) {
  const int n = c.rank();
  GammaValue g;
  for (const WeylElement& w : group) {
    ElementId y = weyl_act(c, w, x);
    for (int i = 1; i <= n; ++i) {
      StringStats st = c.stats(i, y);
      g.raw += static_cast<std::int64_t>(i) * std::min(st.eps, st.phi);
    }
  }
  const std::int64_t order = factorial(n + 1);
  if (g.raw % order != 0)
    throw InternalError("orbit sum " + std::to_string(g.raw) + " for element " + std::to_string(x) +
                        " is not divisible by " + std::to_string(order));
  g.value = HalfInt::integer(g.raw / order);
  return g;
}

inline HalfInt llt_gamma(const Crystal& c, ElementId x) {
  return llt_gamma_full(c, x, WeylElement::all(c.rank())).value;
}

// ---------------------------------------------------------------------------
// Tableau count by horizontal strips

namespace detail {

inline void horizontal_strips(const std::vector<int>& outer, std::size_t row, int remaining, std::vector<int>& inner,
                              std::vector<std::vector<int>>& out) {
  if (row == outer.size()) {
    if (remaining == 0) out.push_back(inner);
    return;
  }
  const int below = row + 1 < outer.size() ? outer[row + 1] : 0;
  for (int take = 0; take <= std::min(remaining, outer[row] - below); ++take) {
    inner[row] = outer[row] - take;
    horizontal_strips(outer, row + 1, remaining - take, inner, out);
  }
  inner[row] = outer[row];
}

inline std::int64_t count_tableaux(const std::vector<int>& shape, std::span<const int> content,
                                   std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t>& memo) {
  if (content.empty()) {
    for (int p : shape)
      if (p != 0) return 0;
    return 1;
  }
  auto key = std::make_pair(shape, content.size());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<std::vector<int>> inners;
  std::vector<int> inner = shape;
  horizontal_strips(shape, 0, content.back(), inner, inners);
  std::int64_t total = 0;
  for (const auto& nu : inners) total += count_tableaux(nu, content.first(content.size() - 1), memo);
  memo.emplace(key, total);
  return total;
}

}  // namespace detail

/// Number of semistandard tableaux of the shape with the given content; the
/// content may be any composition.
inline std::int64_t kostka_count(const Shape& shape, const Weight& mu) {
  if (mu.size() != shape.parts().size()) throw InvalidInput("content length does not match rank");
  for (int v : mu.coords)
    if (v < 0) return 0;
  if (mu.sum() != shape.size()) return 0;
  std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> memo;
  return detail::count_tableaux(shape.parts(), mu.coords, memo);
}

// ---------------------------------------------------------------------------
// Kostka–Foulkes polynomials

enum class KostkaMethod { New, LS, LLT, Count };

inline KostkaMethod parse_kostka_method(const std::string& s) {
  if (s == "new") return KostkaMethod::New;
  if (s == "ls") return KostkaMethod::LS;
  if (s == "llt") return KostkaMethod::LLT;
  if (s == "count") return KostkaMethod::Count;
  throw InvalidInput("unknown method '" + s + "' (expected new, ls, llt or count)");
}

inline void check_kostka_weight(const Shape& shape, const Weight& mu) {
  if (mu.size() != shape.parts().size()) throw InvalidInput("weight " + mu.to_string() + " has the wrong length");
  if (!is_dominant(mu)) throw InvalidInput("weight " + mu.to_string() + " is not dominant");
  if (mu.sum() != shape.size() || !dominated_by(mu, shape.weight()))
    throw InvalidInput("weight " + mu.to_string() + " is not below " + shape.weight().to_string());
}

/// Σ q^{charge} over the μ-weight space of a generated crystal (methods new and llt).
inline HalfLaurentPolynomial kostka(const Crystal& c, const Weight& mu, KostkaMethod method) {
  check_kostka_weight(c.shape(), mu);
  HalfLaurentPolynomial p;
  switch (method) {
    case KostkaMethod::New:
      for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x)
        if (c.weight(x) == mu) p.add_term(charge(c, x).doubled(), 1);
      return p;
    case KostkaMethod::LLT: {
      const auto group = WeylElement::all(c.rank());
      for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x)
        if (c.weight(x) == mu) p.add_term(llt_gamma_full(c, x, group).value.doubled(), 1);
      return p;
    }
    case KostkaMethod::LS:
      for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x)
        if (c.weight(x) == mu) p.add_term(2 * ls_word_charge(c.tableau(x).reading_word()), 1);
      return p;
    case KostkaMethod::Count:
      return HalfLaurentPolynomial::constant(kostka_count(c.shape(), mu));
  }
  throw InternalError("unhandled Kostka method");
}

/// Methods ls and count work from tableaux alone and never build the crystal.
inline HalfLaurentPolynomial kostka(const Shape& shape, const Weight& mu, KostkaMethod method,
                                    std::size_t max_elements = kDefaultMaxElements) {
  check_kostka_weight(shape, mu);
  if (method == KostkaMethod::Count) return HalfLaurentPolynomial::constant(kostka_count(shape, mu));
  if (method == KostkaMethod::LS) {
    HalfLaurentPolynomial p;
    const int n = shape.rank();
    for (const auto& t : enumerate_tableaux(shape, max_elements))
      if (t.content(n) == mu) p.add_term(2 * ls_word_charge(t.reading_word()), 1);
    return p;
  }
  return kostka(generate(shape, Rank(shape.rank()), max_elements), mu, method);
}

// ---------------------------------------------------------------------------
// Swapping maps

/// ψ(x) = e_β^{⟨μ,β∨⟩+c}(x) for the stage reflection t = cδ − β∨ crossed
/// after stage m, where wt(x) = tμ and μ < tμ ≤ highest weight of x's atom.
inline ElementId swapping_map(const Crystal& c, const AtomDecomposition& d, int m, const Weight& mu, ElementId x) {
  const AffineCoroot t = stage_reflection(m + 1, Rank(c.rank()));
  const Weight t_mu = apply_affine_reflection(t, mu);
  if (c.weight(x) != t_mu)
    throw InvalidInput("element " + std::to_string(x) + " does not have weight " + t_mu.to_string());
  if (line_compare(mu, t_mu) != LineOrder::Greater)
    throw InvalidInput("weight " + mu.to_string() + " is not below its reflection " + t_mu.to_string());
  if (!bruhat_leq_dominant(t_mu, d.atom_of(x).highest_weight))
    throw InvalidInput("reflected weight " + t_mu.to_string() + " leaves the atom of element " + std::to_string(x));
  const int power = pairing(mu, t.finite) + t.level;
  auto y = root_op_power(c, Dir::e, t.finite, power, x);
  if (!y)
    throw InternalError("e_" + t.finite.to_string() + "^" + std::to_string(power) + " annihilates element " +
                        std::to_string(x));
  return *y;
}

// ---------------------------------------------------------------------------
// Atomic Hecke expansion

/// a_{μ,λ}, stored as polynomials in q = v², i.e. the doubled exponent of a
/// term equals its v-degree.
using HeckeExpansion = std::map<Weight, HalfLaurentPolynomial>;

inline HeckeExpansion hecke_atomic_expansion(const AtomDecomposition& d) {
  HeckeExpansion out;
  for (const auto& a : d.atoms) {
    HalfInt exponent = a.z - rho_pairing(a.highest_weight);
    out[a.highest_weight].add_term(exponent.doubled(), 1);
  }
  return out;
}

/// Renders a coefficient as a polynomial in v.
inline std::string hecke_to_string(const HalfLaurentPolynomial& a) {
  return a.with_exponents_scaled(2).to_string("v");
}

/// Σ_{μ ≥ ν} a_{μ,λ}(v) v^{2⟨μ−ν,ρ∨⟩}, to compare against K_{λ,ν}(v²).
inline HalfLaurentPolynomial hecke_reconstruction(const HeckeExpansion& expansion, const Weight& nu) {
  HalfLaurentPolynomial total;
  for (const auto& [mu, a] : expansion) {
    if (!dominated_by(nu, mu)) continue;
    total += a.shifted(rho_pairing(mu - nu).doubled());
  }
  return total;
}

}  // namespace atomcharge
