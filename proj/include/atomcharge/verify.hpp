#pragma once

// Property sweeps over all (n, λ) within bounds.  Each suite records one case
// per checked assertion; an exception inside a case is recorded as a failure.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomcharge/affine_graph.hpp"
#include "atomcharge/atoms.hpp"
#include "atomcharge/charge.hpp"
#include "atomcharge/crystal.hpp"
#include "atomcharge/root_data.hpp"

namespace atomcharge {

struct VerifyFailure {
  std::string descriptor;
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  std::string suite;
  std::int64_t cases = 0;
  std::vector<VerifyFailure> failures;

  bool ok() const { return failures.empty(); }

  void expect(bool holds, const std::string& descriptor, const std::string& expected, const std::string& actual) {
    ++cases;
    if (!holds) failures.push_back({descriptor, expected, actual});
  }
  template <class T>
  void expect_eq(const T& actual, const T& expected, const std::string& descriptor) {
    ++cases;
    if (!(actual == expected)) failures.push_back({descriptor, show(expected), show(actual)});
  }

  nlohmann::json to_json() const {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& x : failures) f.push_back({{"case", x.descriptor}, {"expected", x.expected}, {"actual", x.actual}});
    return {{"suite", suite}, {"cases", cases}, {"failures", f}};
  }

  std::string to_text(std::size_t max_listed = 20) const {
    std::string out = suite + ": " + std::to_string(cases) + " cases, " + std::to_string(failures.size()) + " failures\n";
    for (std::size_t a = 0; a < failures.size() && a < max_listed; ++a)
      out += "  FAIL " + failures[a].descriptor + ": expected " + failures[a].expected + ", got " + failures[a].actual + "\n";
    if (failures.size() > max_listed) out += "  ... " + std::to_string(failures.size() - max_listed) + " more\n";
    return out;
  }

 private:
  static std::string show(const std::string& s) { return s; }
  static std::string show(const HalfInt& h) { return h.to_string(); }
  static std::string show(const HalfLaurentPolynomial& p) { return p.to_string(); }
  static std::string show(const Weight& w) { return w.to_string(); }
  static std::string show(bool b) { return b ? "true" : "false"; }
  template <class T>
  static std::string show(const T& v) {
    if constexpr (std::is_integral_v<T>) {
      return std::to_string(v);
    } else {
      return "<value>";
    }
  }
};

/// Ranks 1..R paired with a bound on |λ|.
struct SweepBounds {
  std::vector<std::pair<int, int>> rank_and_max_weight;

  static SweepBounds up_to(int max_rank, int max_weight) {
    SweepBounds b;
    for (int n = 1; n <= max_rank; ++n) b.rank_and_max_weight.emplace_back(n, max_weight);
    return b;
  }
};

/// Partitions with |λ| ≤ max_weight and at most n+1 parts, padded to n+1,
/// in increasing size and then decreasing lexicographic order.
inline std::vector<Shape> sweep_shapes(Rank rank, int max_weight) {
  std::vector<Shape> out;
  const int slots = rank.letters();
  for (int total = 0; total <= max_weight; ++total) {
    std::vector<int> cur;
    auto recurse = [&](auto&& self, int max_part, int remaining) -> void {
      if (remaining == 0) {
        out.emplace_back(cur, rank);
        return;
      }
      if (static_cast<int>(cur.size()) == slots) return;
      for (int v = std::min(max_part, remaining); v >= 1; --v) {
        cur.push_back(v);
        self(self, v, remaining - v);
        cur.pop_back();
      }
    };
    recurse(recurse, total, total);
  }
  return out;
}

using CrystalProvider = std::function<Crystal(const Shape&, Rank)>;

inline CrystalProvider default_provider(std::size_t max_elements = kDefaultMaxElements) {
  return [max_elements](const Shape& s, Rank r) { return generate(s, r, max_elements); };
}

/// Everything one suite needs about a single B(λ).
struct SweepCase {
  const Crystal& crystal;
  const AtomDecomposition& atoms;
  GraphCache& graphs;

  std::string label() const { return "n=" + std::to_string(crystal.rank()) + " λ=" + crystal.shape().weight().to_string(); }

  std::vector<Weight> dominant_weights_below() const {
    std::vector<Weight> out;
    for (const auto& mu : lower_interval(crystal.shape().weight()))
      if (is_dominant(mu)) out.push_back(mu);
    return out;
  }
  std::vector<Weight> atom_highest_weights() const {
    std::set<Weight> s;
    for (const auto& a : atoms.atoms) s.insert(a.highest_weight);
    return {s.begin(), s.end()};
  }
};

namespace detail {

inline std::string elem(const SweepCase& sc, ElementId x) {
  return sc.label() + " x=" + std::to_string(x) + " " + sc.crystal.tableau(x).to_string();
}

/// Reduced word built by always resolving the rightmost descent first; differs
/// from the canonical word for most elements.
inline std::vector<int> alternate_reduced_word(const WeylElement& w) {
  std::vector<int> line = w.images();
  std::vector<int> peeled;
  for (;;) {
    int found = -1;
    for (int a = static_cast<int>(line.size()) - 2; a >= 0; --a)
      if (line[static_cast<std::size_t>(a)] > line[static_cast<std::size_t>(a + 1)]) {
        found = a;
        break;
      }
    if (found < 0) break;
    std::swap(line[static_cast<std::size_t>(found)], line[static_cast<std::size_t>(found + 1)]);
    peeled.push_back(found + 1);
  }
  std::reverse(peeled.begin(), peeled.end());
  return peeled;
}

inline std::optional<ElementId> conjugated_last_op_by_word(const Crystal& c, Dir dir, const std::vector<int>& word,
                                                           ElementId x) {
  std::vector<int> inverse_word(word.rbegin(), word.rend());
  ElementId y = apply_word(c, inverse_word, x);
  auto z = c.apply(dir, c.rank(), y);
  if (!z) return std::nullopt;
  return apply_word(c, word, *z);
}

inline std::string opt(std::optional<ElementId> x) { return x ? std::to_string(*x) : "null"; }

}  // namespace detail

// ---------------------------------------------------------------------------

/// Kostka triple agreement, q = 1 count, per-element charge against γ, and
/// divisibility of the orbit sums.
inline void suite_oracles(const SweepCase& sc, VerifyReport& r) {
  const Crystal& c = sc.crystal;
  for (const Weight& mu : sc.dominant_weights_below()) {
    const std::string tag = sc.label() + " μ=" + mu.to_string();
    auto k_new = kostka(c, mu, KostkaMethod::New);
    auto k_ls = kostka(c.shape(), mu, KostkaMethod::LS);
    auto k_llt = kostka(c, mu, KostkaMethod::LLT);
    r.expect_eq(k_new, k_ls, tag + " new = ls");
    r.expect_eq(k_llt, k_ls, tag + " llt = ls");
    r.expect_eq(k_new.at_one(), kostka_count(c.shape(), mu), tag + " K(1) = tableau count");
    if (mu == c.shape().weight()) r.expect_eq(k_new, HalfLaurentPolynomial::constant(1), tag + " K_{λ,λ} = 1");
  }
  const auto group = WeylElement::all(c.rank());
  for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x) {
    GammaValue g;
    try {
      g = llt_gamma_full(c, x, group);
    } catch (const InternalError& ex) {
      r.expect(false, detail::elem(sc, x) + " γ divisibility", "divisible", ex.what());
      continue;
    }
    r.expect(true, detail::elem(sc, x) + " γ divisibility", "", "");
    if (!is_dominant(c.weight(x))) continue;
    HalfInt ch = charge(c, x);
    r.expect_eq(ch, g.value, detail::elem(sc, x) + " charge = γ");
    r.expect(ch.is_integer() && ch >= HalfInt{}, detail::elem(sc, x) + " charge is a nonnegative integer",
             "nonnegative integer", ch.to_string());
  }
}

/// Atom soundness, B⁺ components, multiplicities and operator compatibility.
inline void suite_atoms(const SweepCase& sc, VerifyReport& r) {
  const Crystal& c = sc.crystal;
  const AtomDecomposition& d = sc.atoms;
  std::size_t total = 0;
  for (std::size_t a = 0; a < d.atoms.size(); ++a) {
    const Atom& atom = d.atoms[a];
    total += atom.size();
    for (const auto& check : validate_atom(atom, c).checks)
      r.expect(check.passed, sc.label() + " atom " + std::to_string(a) + " " + check.name, "pass", check.detail);
  }
  r.expect_eq(total, c.size(), sc.label() + " atom sizes sum to |B(λ)|");

  auto plus = bplus_components(c);
  auto restricted = dominant_restriction(d, c);
  r.expect(plus == restricted, sc.label() + " B⁺ components = atoms on dominant weights",
           std::to_string(restricted.size()) + " parts", std::to_string(plus.size()) + " parts");

  std::map<Weight, std::int64_t> multiplicity;
  for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x)
    if (is_dominant(c.weight(x))) ++multiplicity[c.weight(x)];
  for (const Weight& mu : sc.dominant_weights_below()) {
    std::int64_t containing = 0;
    for (const auto& atom : d.atoms)
      if (dominated_by(mu, atom.highest_weight)) ++containing;
    r.expect_eq(containing, multiplicity[mu], sc.label() + " μ=" + mu.to_string() + " atoms containing μ = dim B(λ)_μ");
  }

  const int n = c.rank();
  for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x) {
    const std::size_t home = d.member_of[static_cast<std::size_t>(x)];
    const Weight& top = d.atoms[home].highest_weight;
    for (int j = 1; j <= n; ++j) {
      const Root alpha{j, n};
      for (Dir dir : {Dir::f, Dir::e}) {
        auto y = root_op(c, dir, alpha, x);
        if (y)
          r.expect_eq(d.member_of[static_cast<std::size_t>(*y)], home,
                      detail::elem(sc, x) + (dir == Dir::f ? " f_" : " e_") + alpha.to_string() + " stays in atom");
      }
      int max_k = 0;
      Weight cur = c.weight(x) - alpha.vector(n);
      while (bruhat_leq_dominant(cur, top)) {
        ++max_k;
        cur = cur - alpha.vector(n);
      }
      r.expect_eq(root_string_stats(c, alpha, x).phi, max_k,
                  detail::elem(sc, x) + " φ_" + alpha.to_string() + " = max{k : wt − kα ≤ λ′}");
    }
  }
}

/// Stage-0 lengths, the update rule, the closed form at infinity, label
/// consistency and stabilization, for every atom highest weight.  Also the
/// per-element form of Arr_∞.
inline void suite_arrows(const SweepCase& sc, VerifyReport& r) {
  const int n = sc.crystal.rank();
  const Rank rank(n);
  for (const Weight& base : sc.atom_highest_weights()) {
    const std::string tag = "n=" + std::to_string(n) + " λ′=" + base.to_string();
    TwistedGraph g0 = build_graph(base, Stage::finite(0));
    const auto& verts = g0.vertices();

    std::size_t collinear = 0;
    for (std::size_t a = 0; a < verts.size(); ++a)
      for (std::size_t b = a + 1; b < verts.size(); ++b)
        if (root_line(verts[a], verts[b])) ++collinear;
    r.expect_eq(g0.edges().size(), collinear, tag + " one edge per collinear pair");

    for (const Weight& mu : verts) r.expect_eq(g0.arr(mu), length(mu), tag + " μ=" + mu.to_string() + " Arr_0 = ℓ");

    const int M = g0.stabilization_stage();
    TwistedGraph prev = g0;
    for (int m = 0; m <= M; ++m) {
      TwistedGraph next = build_graph(base, Stage::finite(m + 1));
      const AffineCoroot t = stage_reflection(m + 1, rank);
      for (const Weight& mu : verts) {
        const Weight tmu = apply_affine_reflection(t, mu);
        int delta = 0;
        LineOrder ord = line_compare(mu, tmu);
        if (ord == LineOrder::Lower) delta = -1;
        if (ord == LineOrder::Greater && prev.contains(tmu)) delta = 1;
        r.expect_eq(next.arr(mu), prev.arr(mu) + delta,
                    tag + " m=" + std::to_string(m) + " μ=" + mu.to_string() + " update rule");
      }
      for (const auto& e : prev.edges())
        r.expect_eq(apply_affine_reflection(e.label, verts[e.dst]), verts[e.src],
                    tag + " m=" + std::to_string(m) + " edge label " + e.label.to_string() + " reflects dst to src");
      prev = std::move(next);
    }

    TwistedGraph ginf = build_graph(base, Stage::infinity());
    TwistedGraph gM = build_graph(base, Stage::finite(M));
    bool same = ginf.edges().size() == gM.edges().size();
    for (std::size_t a = 0; same && a < ginf.edges().size(); ++a)
      same = ginf.edges()[a].src == gM.edges()[a].src && ginf.edges()[a].dst == gM.edges()[a].dst;
    r.expect(same, tag + " stage M=" + std::to_string(M) + " equals stage ∞", "equal", "different");
    for (const Weight& mu : verts)
      r.expect_eq(ginf.arr(mu), arr_infinity_formula(mu, base), tag + " μ=" + mu.to_string() + " Arr_∞ closed form");
  }

  const Crystal& c = sc.crystal;
  for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x) {
    const Weight& w = c.weight(x);
    int expected = 0;
    for (const Root& beta : positive_roots(n))
      expected += beta.in_levi(n) ? length_along(w, beta) : root_string_stats(c, beta, x).phi;
    r.expect_eq(sc.graphs.arr(sc.atoms.atom_of(x).highest_weight, Stage::infinity(), w), expected,
                detail::elem(sc, x) + " Arr_∞ = Σ φ_β + Σ ℓ^β");
  }
}

/// Arr_m(μ) = Arr_m(tμ) − 1 whenever μ < tμ ∈ I(λ′).
inline void suite_gammam(const SweepCase& sc, VerifyReport& r) {
  const int n = sc.crystal.rank();
  const Rank rank(n);
  for (const Weight& base : sc.atom_highest_weights()) {
    const std::string tag = "n=" + std::to_string(n) + " λ′=" + base.to_string();
    const int M = sc.graphs.stabilization_stage(base);
    for (int m = 0; m < M; ++m) {
      TwistedGraph g = build_graph(base, Stage::finite(m));
      const AffineCoroot t = stage_reflection(m + 1, rank);
      for (const Weight& mu : g.vertices()) {
        const Weight tmu = apply_affine_reflection(t, mu);
        if (!g.contains(tmu) || line_compare(mu, tmu) != LineOrder::Greater) continue;
        r.expect_eq(g.arr(mu), g.arr(tmu) - 1,
                    tag + " m=" + std::to_string(m) + " μ=" + mu.to_string() + " Arr_m(μ) = Arr_m(tμ) − 1");
      }
    }
  }
}

/// Swapping maps and the stagewise recharge transitions.
inline void suite_swapping(const SweepCase& sc, VerifyReport& r) {
  const Crystal& c = sc.crystal;
  const AtomDecomposition& d = sc.atoms;
  const Rank rank(c.rank());
  const int M = max_stabilization_stage(d, sc.graphs);
  const auto count = static_cast<ElementId>(c.size());

  std::vector<RechargeTable> tables;
  for (int m = 0; m <= M; ++m) tables.push_back(recharge_table(c, d, Stage::finite(m), sc.graphs));
  RechargeTable inf = recharge_table(c, d, Stage::infinity(), sc.graphs);

  for (ElementId x = 0; x < count; ++x) {
    const Atom& atom = d.atom_of(x);
    const Weight& w = c.weight(x);
    const auto ix = static_cast<std::size_t>(x);
    r.expect_eq(tables[0].values[ix], atom.z - HalfInt::integer(length(w)), detail::elem(sc, x) + " r_0 = Z − ℓ(wt)");
    r.expect_eq(inf.values[ix], atom.z - HalfInt::integer(arr_infinity_formula(w, atom.highest_weight)),
                detail::elem(sc, x) + " r_∞ = Z − Arr_∞ closed form");
    r.expect_eq(tables[static_cast<std::size_t>(M)].values[ix], inf.values[ix], detail::elem(sc, x) + " r_M = r_∞");
  }

  for (int m = 0; m < M; ++m) {
    const AffineCoroot t = stage_reflection(m + 1, rank);
    const auto& rm = tables[static_cast<std::size_t>(m)].values;
    const auto& rnext = tables[static_cast<std::size_t>(m + 1)].values;
    const std::string stage_tag = " m=" + std::to_string(m);

    std::set<ElementId> images;
    std::map<Weight, std::set<ElementId>> images_by_weight;
    for (ElementId x = 0; x < count; ++x) {
      const Weight& w = c.weight(x);
      const Weight mu = apply_affine_reflection(t, w);
      if (line_compare(w, mu) != LineOrder::Lower) continue;  // need μ < wt(x) = tμ
      const std::string tag = detail::elem(sc, x) + stage_tag + " ψ";
      ElementId y = swapping_map(c, d, m, mu, x);
      r.expect_eq(c.weight(y), mu, tag + " weight");
      r.expect_eq(d.member_of[static_cast<std::size_t>(y)], d.member_of[static_cast<std::size_t>(x)], tag + " stays in atom");
      r.expect_eq(rnext[static_cast<std::size_t>(y)], rnext[static_cast<std::size_t>(x)] - HalfInt::integer(1),
                  tag + " r_{m+1}(ψx) = r_{m+1}(x) − 1");
      r.expect(images_by_weight[mu].insert(y).second, tag + " injective", "fresh image", "repeated image " + std::to_string(y));
      images.insert(y);
    }

    for (ElementId x = 0; x < count; ++x) {
      const Weight& w = c.weight(x);
      const Weight tw = apply_affine_reflection(t, w);
      const LineOrder ord = line_compare(w, tw);
      HalfInt expected = rnext[static_cast<std::size_t>(x)];
      bool raised = false;
      if (ord == LineOrder::Lower) {
        expected -= HalfInt::integer(1);
      } else if (ord == LineOrder::Greater && bruhat_leq_dominant(tw, d.atom_of(x).highest_weight)) {
        expected += HalfInt::integer(1);
        raised = true;
      }
      r.expect_eq(rm[static_cast<std::size_t>(x)], expected, detail::elem(sc, x) + stage_tag + " r_m from r_{m+1}");
      r.expect_eq(raised, images.contains(x), detail::elem(sc, x) + stage_tag + " raised exactly on ψ images");
    }
  }
}

/// Crystal-layer structure: operator tables, character, Weyl action, root
/// strings, tilde operators.
inline void suite_strings(const SweepCase& sc, VerifyReport& r) {
  const Crystal& c = sc.crystal;
  const int n = c.rank();
  const auto count = static_cast<ElementId>(c.size());
  const auto roots = positive_roots(n);

  auto tops = c.highest_weight_elements();
  r.expect_eq(tops.size(), std::size_t{1}, sc.label() + " unique highest-weight element");
  if (!tops.empty()) r.expect_eq(c.weight(tops.front()), c.shape().weight(), sc.label() + " highest weight is λ");

  std::map<Weight, std::int64_t> weight_counts;
  for (ElementId x = 0; x < count; ++x) ++weight_counts[c.weight(x)];
  for (const auto& [w, k] : weight_counts)
    r.expect_eq(k, kostka_count(c.shape(), w), sc.label() + " wt=" + w.to_string() + " multiplicity = tableau count");

  std::vector<bool> seen(c.size(), false);
  std::vector<ElementId> queue;
  if (!tops.empty()) {
    queue.push_back(tops.front());
    seen[static_cast<std::size_t>(tops.front())] = true;
  }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int i = 1; i <= n; ++i)
      if (auto y = c.f(i, queue[head]); y && !seen[static_cast<std::size_t>(*y)]) {
        seen[static_cast<std::size_t>(*y)] = true;
        queue.push_back(*y);
      }
  r.expect_eq(queue.size(), c.size(), sc.label() + " reachable from the highest-weight element");

  for (ElementId x = 0; x < count; ++x) {
    const Weight& w = c.weight(x);
    for (int i = 1; i <= n; ++i) {
      const Root ai{i, i};
      if (auto y = c.f(i, x)) {
        r.expect_eq(c.e(i, *y).value_or(-1), x, detail::elem(sc, x) + " e_i f_i = id, i=" + std::to_string(i));
        r.expect_eq(c.weight(*y), w - ai.vector(n), detail::elem(sc, x) + " wt f_i, i=" + std::to_string(i));
      }
      auto e_direct = tableau_op(Dir::e, i, c.tableau(x));
      auto e_table = c.e(i, x);
      r.expect(e_direct.has_value() == e_table.has_value() && (!e_direct || c.tableau(*e_table) == *e_direct),
               detail::elem(sc, x) + " e_" + std::to_string(i) + " table = signature rule", "match", "mismatch");
      r.expect_eq(c.weight(c.reflect(i, x)), reflect(w, ai), detail::elem(sc, x) + " wt s_i");
    }
    for (const Root& alpha : roots) {
      StringStats st = root_string_stats(c, alpha, x);
      r.expect_eq(st.phi - st.eps, pairing(w, alpha), detail::elem(sc, x) + " φ−ε for " + alpha.to_string());

      // s_α x lies on the α-string through x.
      ElementId top = x;
      while (auto up = root_op(c, Dir::e, alpha, top)) top = *up;
      std::set<ElementId> string{top};
      for (std::optional<ElementId> cur = top; (cur = root_op(c, Dir::f, alpha, *cur));) string.insert(*cur);
      WeylElement s_alpha = WeylElement::identity(n);
      std::vector<int> images = s_alpha.images();
      std::swap(images[static_cast<std::size_t>(alpha.j - 1)], images[static_cast<std::size_t>(alpha.k)]);
      ElementId sx = weyl_act(c, WeylElement::from_images(images), x);
      r.expect(string.contains(sx), detail::elem(sc, x) + " s_α on α-string, α=" + alpha.to_string(), "on string",
               "element " + std::to_string(sx));
    }
    for (int i = 1; i < n; ++i) {
      const Root a{i, i + 1};
      if (auto y = root_op(c, Dir::f, a, x)) {
        r.expect_eq(c.stats(i, *y).eps + c.stats(i + 1, *y).phi, c.stats(i, x).eps + c.stats(i + 1, x).phi,
                    detail::elem(sc, x) + " ε_i + φ_{i+1} constant along " + a.to_string() + "-string");
      }
    }
  }

  // Coxeter relations and weight compatibility on moderate crystals.
  if (c.size() <= 500) {
    for (ElementId x = 0; x < count; ++x) {
      for (int i = 1; i <= n; ++i) {
        r.expect_eq(c.reflect(i, c.reflect(i, x)), x, detail::elem(sc, x) + " s_i² = 1");
        for (int j = i + 1; j <= n; ++j) {
          if (j == i + 1) {
            ElementId lhs = c.reflect(i, c.reflect(j, c.reflect(i, x)));
            ElementId rhs = c.reflect(j, c.reflect(i, c.reflect(j, x)));
            r.expect_eq(lhs, rhs, detail::elem(sc, x) + " braid s_i s_{i+1} s_i");
          } else {
            r.expect_eq(c.reflect(i, c.reflect(j, x)), c.reflect(j, c.reflect(i, x)), detail::elem(sc, x) + " s_i s_j = s_j s_i");
          }
        }
      }
      for (const WeylElement& w : WeylElement::all(n)) {
        r.expect_eq(c.weight(weyl_act(c, w, x)), w.apply(c.weight(x)), detail::elem(sc, x) + " wt(w·x) = w·wt(x)");
      }
    }
  }

  // Tilde operators: agreement with f_α for α = α_{j,n}, independence of the
  // conjugating element, and commutation on dominant elements.
  for (const Root& alpha : roots) {
    const WeylElement u = tilde_conjugator(alpha, n);
    std::vector<std::vector<int>> words;
    for (const WeylElement& v : WeylElement::all(n)) {
      if (v == u || v.image(n - 1) != alpha.j - 1 || v.image(n) != alpha.k) continue;
      words.push_back(v.reduced_word());
    }
    auto alt = detail::alternate_reduced_word(u);
    if (alt != u.reduced_word()) words.push_back(alt);
    for (ElementId x = 0; x < count; ++x) {
      for (Dir dir : {Dir::f, Dir::e}) {
        auto ref = tilde_op(c, dir, alpha, x);
        for (const auto& word : words)
          r.expect_eq(detail::opt(detail::conjugated_last_op_by_word(c, dir, word, x)), detail::opt(ref),
                      detail::elem(sc, x) + " tilde " + alpha.to_string() + " independent of conjugator");
        if (alpha.k == n)
          r.expect_eq(detail::opt(ref), detail::opt(root_op(c, dir, alpha, x)),
                      detail::elem(sc, x) + " f̃ = f for " + alpha.to_string());
      }
    }
  }
  for (ElementId x = 0; x < count; ++x) {
    const Weight& w = c.weight(x);
    if (!is_dominant(w)) continue;
    for (const Root& a : roots) {
      for (const Root& b : roots) {
        if (b.j != a.k + 1) continue;
        if (pairing(w, a) <= 0 || pairing(w, b) <= 0) continue;
        const Root g{a.j, b.k};
        auto fg = tilde_op(c, Dir::f, g, x);
        auto fa = tilde_op(c, Dir::f, a, x);
        auto fb = tilde_op(c, Dir::f, b, x);
        auto fba = fa ? tilde_op(c, Dir::f, b, *fa) : std::nullopt;
        auto fab = fb ? tilde_op(c, Dir::f, a, *fb) : std::nullopt;
        const std::string tag = detail::elem(sc, x) + " " + a.to_string() + "+" + b.to_string();
        r.expect(fg.has_value(), tag + " f̃_γ ≠ 0", "nonzero", "null");
        r.expect_eq(detail::opt(fba), detail::opt(fg), tag + " f̃_β f̃_α = f̃_γ");
        r.expect_eq(detail::opt(fab), detail::opt(fg), tag + " f̃_α f̃_β = f̃_γ");
      }
    }
  }
}

/// a_{λ,λ} = 1, nonnegative coefficients, and the reconstruction of K_{λ,ν}.
inline void suite_hecke(const SweepCase& sc, VerifyReport& r) {
  const Crystal& c = sc.crystal;
  HeckeExpansion h = hecke_atomic_expansion(sc.atoms);
  const Weight lambda = c.shape().weight();
  r.expect_eq(h.contains(lambda) ? h.at(lambda) : HalfLaurentPolynomial{}, HalfLaurentPolynomial::constant(1),
              sc.label() + " a_{λ,λ} = 1");
  for (const auto& [mu, a] : h) {
    bool integral = a.has_nonnegative_coefficients();
    for (const auto& [e, coeff] : a.terms()) integral = integral && e % 2 == 0;
    r.expect(integral, sc.label() + " a_{" + mu.to_string() + "} has nonnegative integer data", "v^{even} terms, coeff ≥ 0",
             hecke_to_string(a));
  }
  for (const Weight& nu : sc.dominant_weights_below()) {
    r.expect_eq(hecke_reconstruction(h, nu), kostka(c.shape(), nu, KostkaMethod::LS),
                sc.label() + " ν=" + nu.to_string() + " Σ a_μ v^{2⟨μ−ν,ρ∨⟩} = K_{λ,ν}(v²)");
  }
}

using SuiteFn = void (*)(const SweepCase&, VerifyReport&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"oracles", suite_oracles}, {"atoms", suite_atoms},       {"gammam", suite_gammam}, {"arrows", suite_arrows},
      {"swapping", suite_swapping}, {"strings", suite_strings}, {"hecke", suite_hecke},
  };
  return table;
}

inline std::vector<std::string> suite_names(const std::string& requested) {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suite_table())
    if (requested == "all" || requested == name) out.push_back(name);
  if (out.empty()) throw InvalidInput("unknown suite '" + requested + "'");
  return out;
}

/// Runs the requested suites over every (n, λ) within bounds; one report per
/// suite, in table order.
inline std::vector<VerifyReport> run_verify(const std::string& suite, const SweepBounds& bounds,
                                            const CrystalProvider& provider = default_provider()) {
  const auto names = suite_names(suite);
  std::vector<VerifyReport> reports;
  for (const auto& name : names) reports.push_back(VerifyReport{name, 0, {}});

  for (const auto& [n, max_weight] : bounds.rank_and_max_weight) {
    const Rank rank(n);
    GraphCache graphs;
    for (const Shape& shape : sweep_shapes(rank, max_weight)) {
      const std::string label = "n=" + std::to_string(n) + " λ=" + shape.weight().to_string();
      std::optional<Crystal> crystal;
      std::optional<AtomDecomposition> atoms;
      try {
        crystal.emplace(provider(shape, rank));
        atoms.emplace(decompose(*crystal));
      } catch (const std::exception& ex) {
        for (auto& rep : reports) rep.expect(false, label + " setup", "crystal and atoms", ex.what());
        continue;
      }
      SweepCase sc{*crystal, *atoms, graphs};
      for (std::size_t a = 0; a < names.size(); ++a) {
        for (const auto& [name, fn] : suite_table()) {
          if (name != names[a]) continue;
          try {
            fn(sc, reports[a]);
          } catch (const std::exception& ex) {
            reports[a].expect(false, label + " " + name, "no exception", ex.what());
          }
        }
      }
    }
  }
  return reports;
}

}  // namespace atomcharge
