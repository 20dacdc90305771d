#pragma once

// Atomic decomposition of B(λ): the connected components of the graph whose
// edges join x to s_i(x) and to f_n(x).

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomcharge/crystal.hpp"
#include "atomcharge/errors.hpp"
#include "atomcharge/half_laurent.hpp"
#include "atomcharge/root_data.hpp"

namespace atomcharge {

/// Z(x) = ⟨wt(x), ρ∨⟩ + Σ_{α>0} ε_α(x).
inline HalfInt atomic_number(const Crystal& c, ElementId x) {
  std::int64_t eps_total = 0;
  for (const Root& alpha : positive_roots(c.rank())) eps_total += root_string_stats(c, alpha, x).eps;
  return rho_pairing(c.weight(x)) + HalfInt::integer(eps_total);
}

struct Atom {
  std::vector<ElementId> element_ids;  // increasing
  Weight highest_weight;
  ElementId top = 0;  // the member of weight highest_weight
  HalfInt z;

  std::size_t size() const { return element_ids.size(); }

  nlohmann::json to_json() const {
    return {{"highest_weight", highest_weight.coords},
            {"size", element_ids.size()},
            {"z_doubled", z.doubled()},
            {"element_ids", element_ids}};
  }
};

struct AtomDecomposition {
  std::vector<Atom> atoms;            // ordered by smallest member id
  std::vector<std::size_t> member_of;  // element id -> atom index

  const Atom& atom_of(ElementId x) const { return atoms[member_of.at(static_cast<std::size_t>(x))]; }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& a : atoms) j.push_back(a.to_json());
    return j;
  }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

  /// Classes as sorted member lists, ordered by smallest member.
  std::vector<std::vector<std::size_t>> classes(const std::vector<std::size_t>& members) {
    std::map<std::size_t, std::size_t> slot;
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t a : members) {
      auto [it, inserted] = slot.try_emplace(find(a), out.size());
      if (inserted) out.emplace_back();
      out[it->second].push_back(a);
    }
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

/// The dominant weight dominating every member weight, if any.
inline std::optional<Weight> unique_top_weight(const Crystal& c, const std::vector<ElementId>& members) {
  std::optional<Weight> best;
  for (ElementId x : members) {
    const Weight& w = c.weight(x);
    if (!is_dominant(w)) continue;
    if (!best || dominated_by(*best, w)) best = w;
  }
  if (!best) return std::nullopt;
  for (ElementId x : members)
    if (!dominated_by(dominant_of(c.weight(x)), *best)) return std::nullopt;
  return best;
}

}  // namespace detail

inline AtomDecomposition decompose(const Crystal& c) {
  const std::size_t size = c.size();
  detail::UnionFind uf(size);
  const int n = c.rank();
  for (std::size_t a = 0; a < size; ++a) {
    auto x = static_cast<ElementId>(a);
    for (int i = 1; i <= n; ++i) uf.unite(a, static_cast<std::size_t>(c.reflect(i, x)));
    if (auto y = c.f(n, x)) uf.unite(a, static_cast<std::size_t>(*y));
  }
  std::vector<std::size_t> all(size);
  std::iota(all.begin(), all.end(), 0);

  AtomDecomposition d;
  d.member_of.assign(size, 0);
  for (const auto& cls : uf.classes(all)) {
    Atom atom;
    for (std::size_t a : cls) atom.element_ids.push_back(static_cast<ElementId>(a));
    auto top_weight = detail::unique_top_weight(c, atom.element_ids);
    if (!top_weight)
      throw InternalError("component containing element " + std::to_string(cls.front()) +
                          " has no unique dominant maximal weight");
    atom.highest_weight = *top_weight;
    auto it = std::find_if(atom.element_ids.begin(), atom.element_ids.end(),
                           [&](ElementId x) { return c.weight(x) == atom.highest_weight; });
    atom.top = *it;
    atom.z = atomic_number(c, atom.top);
    for (std::size_t a : cls) d.member_of[a] = d.atoms.size();
    d.atoms.push_back(std::move(atom));
  }
  return d;
}

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& ch) { return ch.passed; });
  }
};

/// Distinct weights, weight set equal to the lower interval of the highest
/// weight, and Z constant across members.
inline ValidationReport validate_atom(const Atom& a, const Crystal& c) {
  ValidationReport report;

  std::set<Weight> seen;
  std::string repeated;
  for (ElementId x : a.element_ids)
    if (!seen.insert(c.weight(x)).second && repeated.empty()) repeated = c.weight(x).to_string();
  report.checks.push_back({"distinct_weights", repeated.empty(),
                           repeated.empty() ? "" : "weight " + repeated + " occurs more than once"});

  std::set<Weight> interval;
  if (is_dominant(a.highest_weight)) {
    auto iv = lower_interval(a.highest_weight);
    interval.insert(iv.begin(), iv.end());
  }
  bool same = interval == seen;
  report.checks.push_back({"lower_interval", same,
                           same ? ""
                                : std::to_string(seen.size()) + " member weights vs " + std::to_string(interval.size()) +
                                      " weights below " + a.highest_weight.to_string()});

  std::string mismatch;
  for (ElementId x : a.element_ids) {
    HalfInt z = atomic_number(c, x);
    if (z != a.z) {
      mismatch = "element " + std::to_string(x) + " has Z = " + z.to_string() + ", atom has " + a.z.to_string();
      break;
    }
  }
  report.checks.push_back({"z_constant", mismatch.empty(), mismatch});
  return report;
}

/// Components of the graph on dominant-weight elements with edges joining x and f̃_α(x).
inline std::vector<std::vector<ElementId>> bplus_components(const Crystal& c) {
  std::vector<std::size_t> dominant;
  for (std::size_t a = 0; a < c.size(); ++a)
    if (is_dominant(c.weight(static_cast<ElementId>(a)))) dominant.push_back(a);
  detail::UnionFind uf(c.size());
  const auto roots = positive_roots(c.rank());
  for (std::size_t a : dominant) {
    for (const Root& alpha : roots) {
      auto y = tilde_op(c, Dir::f, alpha, static_cast<ElementId>(a));
      if (y && is_dominant(c.weight(*y))) uf.unite(a, static_cast<std::size_t>(*y));
    }
  }
  std::vector<std::vector<ElementId>> out;
  for (const auto& cls : uf.classes(dominant)) {
    out.emplace_back();
    for (std::size_t a : cls) out.back().push_back(static_cast<ElementId>(a));
  }
  return out;
}

/// The atom partition restricted to dominant-weight elements, in the same
/// layout as bplus_components.
inline std::vector<std::vector<ElementId>> dominant_restriction(const AtomDecomposition& d, const Crystal& c) {
  std::vector<std::vector<ElementId>> out;
  for (const auto& a : d.atoms) {
    std::vector<ElementId> part;
    for (ElementId x : a.element_ids)
      if (is_dominant(c.weight(x))) part.push_back(x);
    if (!part.empty()) out.push_back(std::move(part));
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.front() < r.front(); });
  return out;
}

}  // namespace atomcharge
