// Acceptance run: one PASS/FAIL line per criterion.  Every criterion is exact;
// the only tolerance is the failure count, pinned at zero.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "atomcharge/verify.hpp"

using namespace atomcharge;
namespace fs = std::filesystem;

namespace {

constexpr std::int64_t kAllowedFailures = 0;

struct Criterion {
  Criterion(int id_, std::string title_) : id(id_), title(std::move(title_)) {}

  int id;
  std::string title;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures == 0) first_failure = what;
    ++failures;
  }
  void absorb(const VerifyReport& r) {
    checks += r.cases;
    for (const auto& f : r.failures) {
      if (failures == 0) first_failure = f.descriptor + ": expected " + f.expected + ", got " + f.actual;
      ++failures;
    }
  }
  bool passed() const { return checks > 0 && failures <= kAllowedFailures; }
};

struct SweepRank {
  int n;
  int max_weight;
};

// Ranks 1–3 up to |λ| = 8, rank 4 up to |λ| = 6.
constexpr std::array<SweepRank, 4> kSweep{{{1, 8}, {2, 8}, {3, 8}, {4, 6}}};
constexpr int kGammamMaxRank = 3;

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = ::pclose(pipe);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void run_element_criteria(const SweepCase& sc, std::vector<Criterion>& crit) {
  const Crystal& c = sc.crystal;
  const AtomDecomposition& d = sc.atoms;
  const int n = c.rank();
  const Shape& shape = c.shape();
  const Weight lambda = shape.weight();
  const std::string tag = sc.label();
  const auto count = static_cast<ElementId>(c.size());
  const auto group = WeylElement::all(n);

  // 1 and 2: Kostka routes.
  const auto dominant = sc.dominant_weights_below();
  for (const Weight& mu : dominant) {
    const auto k_new = kostka(c, mu, KostkaMethod::New);
    const auto k_ls = kostka(c, mu, KostkaMethod::LS);
    const auto k_llt = kostka(c, mu, KostkaMethod::LLT);
    const std::string at = tag + " μ=" + mu.to_string();
    crit[0].check(k_new == k_ls, at + " new=" + k_new.to_string() + " ls=" + k_ls.to_string());
    crit[0].check(k_new == k_llt, at + " new=" + k_new.to_string() + " llt=" + k_llt.to_string());
    crit[0].check(k_new.at_one() == kostka_count(shape, mu), at + " K(1) vs tableau count");
    if (mu == lambda) crit[1].check(k_new.to_string() == "1", at + " K_{λλ}=" + k_new.to_string());
  }

  // 3 and 4: atoms.
  for (const Atom& a : d.atoms) {
    const ValidationReport rep = validate_atom(a, c);
    for (const auto& ch : rep.checks) {
      if (ch.name == "z_constant") {
        crit[3].check(ch.passed, tag + " " + ch.detail);
      } else {
        crit[2].check(ch.passed, tag + " " + ch.name + " " + ch.detail);
      }
    }
    for (ElementId x : a.element_ids)
      crit[3].check(atomic_number(c, x) == a.z, tag + " x=" + std::to_string(x) + " Z differs from atom value");
  }
  crit[2].check(bplus_components(c) == dominant_restriction(d, c), tag + " B⁺ components differ from atoms");

  // 5: charge against the averaged string statistic.
  for (ElementId x = 0; x < count; ++x) {
    if (!is_dominant(c.weight(x))) continue;
    GammaValue g;
    try {
      g = llt_gamma_full(c, x, group);
    } catch (const InternalError& ex) {
      crit[4].check(false, tag + " " + ex.what());
      continue;
    }
    crit[4].check(charge(c, x) == g.value, tag + " x=" + std::to_string(x) + " charge " + charge(c, x).to_string() +
                                                " vs γ " + g.value.to_string());
  }

  // 6, 7 and 8: twisted graphs over each atom highest weight.
  const Rank rank(n);
  for (const Weight& base : sc.atom_highest_weights()) {
    const std::string btag = tag + " λ′=" + base.to_string();
    const TwistedGraph& g0 = sc.graphs.base_graph(base);
    for (const Weight& mu : g0.vertices())
      crit[5].check(g0.arr(mu) == length(mu), btag + " μ=" + mu.to_string() + " Arr_0 ≠ ℓ");

    const int M = g0.stabilization_stage();
    if (n <= kGammamMaxRank) {
      for (int m = 0; m < M; ++m) {
        const AffineCoroot t = stage_reflection(m + 1, rank);
        for (const Weight& mu : g0.vertices()) {
          const Weight tmu = apply_affine_reflection(t, mu);
          if (!g0.contains(tmu) || line_compare(mu, tmu) != LineOrder::Greater) continue;
          const int lhs = sc.graphs.arr(base, Stage::finite(m), mu);
          const int rhs = sc.graphs.arr(base, Stage::finite(m), tmu) - 1;
          crit[6].check(lhs == rhs, btag + " m=" + std::to_string(m) + " μ=" + mu.to_string());
        }
      }
    }
    for (const Weight& mu : g0.vertices())
      crit[7].check(sc.graphs.arr(base, Stage::infinity(), mu) == arr_infinity_formula(mu, base),
                    btag + " μ=" + mu.to_string() + " Arr_∞ closed form");
  }
  for (ElementId x = 0; x < count; ++x) {
    const Weight& w = c.weight(x);
    int expected = 0;
    for (const Root& beta : positive_roots(n))
      expected += beta.in_levi(n) ? length_along(w, beta) : root_string_stats(c, beta, x).phi;
    crit[7].check(sc.graphs.arr(d.atom_of(x).highest_weight, Stage::infinity(), w) == expected,
                  tag + " x=" + std::to_string(x) + " Arr_∞ ≠ Σφ_β + Σℓ^β");
  }

  // 9 and 11 share the property suites.
  VerifyReport swapping{"swapping", 0, {}};
  suite_swapping(sc, swapping);
  crit[8].absorb(swapping);
  VerifyReport strings{"strings", 0, {}};
  suite_strings(sc, strings);
  crit[10].absorb(strings);

  // 10: Hecke reconstruction against classical charge.
  const HeckeExpansion h = hecke_atomic_expansion(d);
  crit[9].check(h.contains(lambda) && hecke_to_string(h.at(lambda)) == "1", tag + " a_{λλ} ≠ 1");
  for (const Weight& nu : dominant) {
    const auto lhs = hecke_reconstruction(h, nu);
    const auto rhs = kostka(shape, nu, KostkaMethod::LS);
    crit[9].check(lhs == rhs, tag + " ν=" + nu.to_string() + " reconstruction " + lhs.to_string() + " vs " +
                                  rhs.to_string());
  }
}

void run_pinned(std::vector<Criterion>& crit) {
  const auto k20 = kostka(Shape({2, 0}, Rank(1)), {1, 1}, KostkaMethod::New);
  crit[1].check(k20.to_string() == "q", "K_{(2,0),(1,1)} = " + k20.to_string());
  const auto k21 = kostka(Shape({2, 1, 0}, Rank(2)), {1, 1, 1}, KostkaMethod::New);
  crit[1].check(k21.to_string() == "q^2 + q", "K_{(2,1,0),(1,1,1)} = " + k21.to_string());

  const Crystal c = generate(Shape({2, 1, 0}, Rank(2)), Rank(2));
  const HeckeExpansion h = hecke_atomic_expansion(decompose(c));
  std::vector<std::string> coeffs;
  for (auto it = h.rbegin(); it != h.rend(); ++it) coeffs.push_back(hecke_to_string(it->second));
  crit[9].check(coeffs == std::vector<std::string>{"1", "v^2"}, "λ=(2,1,0) atomic expansion");
}

void run_determinism(const std::string& cli, Criterion& crit) {
  const std::vector<std::string> invocations = {
      "kostka --rank 3 --weight 3,2,1,0 --mu 2,2,1,1",
      "kostka --rank 2 --weight 4,2,0 --mu 2,2,2 --method llt --format json",
      "crystal --rank 2 --weight 3,1,0 --format json",
      "atoms --rank 3 --weight 3,1,1,0 --format json",
      "graph --rank 2 --weight 3,1,0 --stage 2 --format dot",
      "graph --rank 3 --weight 2,1,0,0 --stage inf --format json",
      "recharge --rank 2 --weight 3,2,0 --stage 1",
      "hecke --rank 3 --weight 2,2,1,0",
      "verify --suite gammam --rank 2 --max-weight 4",
  };
  for (const auto& args : invocations) {
    int s1 = 0, s2 = 0;
    const std::string a = capture(cli + " " + args + " 2>&1", s1);
    const std::string b = capture(cli + " " + args + " 2>&1", s2);
    crit.check(s1 == 0 && s2 == 0, args + " exit status");
    crit.check(!a.empty() && a == b, args + " output differs between runs");
  }

  const fs::path dir = fs::temp_directory_path() / ("atomcharge_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const std::string base = cli + " crystal --rank 3 --weight 3,2,1,0 --format json";
  int s = 0;
  const std::string direct = capture(base, s);
  crit.check(s == 0, "direct crystal dump");
  const std::string miss = capture(base + " --cache " + dir.string(), s);
  const std::string hit = capture(base + " --cache " + dir.string(), s);
  const std::string stored = slurp(dir / "crystal_n3_3-2-1-0.json");
  crit.check(miss == direct, "cache miss output differs from direct generation");
  crit.check(hit == direct, "cache hit output differs from direct generation");
  crit.check(stored == direct, "cache file differs from direct dump");
  const std::string roundtrip = Crystal::from_json(nlohmann::json::parse(stored)).to_json().dump() + "\n";
  crit.check(roundtrip == direct, "re-serialized cache differs");
  fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance PATH_TO_CLI\n";
    return 2;
  }
  const std::string cli = argv[1];
  const auto start = std::chrono::steady_clock::now();

  std::vector<Criterion> crit = {
      {1, "Kostka routes new = ls = llt, K(1) = tableau count"},
      {2, "pinned Kostka values and K_{λλ} = 1"},
      {3, "atoms: distinct weights, lower interval, B⁺ components"},
      {4, "atomic number constant on atoms"},
      {5, "charge = γ on dominant elements, orbit sums divisible"},
      {6, "stage-0 in-degree equals length"},
      {7, "Arr_m(μ) = Arr_m(tμ) − 1 for n ≤ 3"},
      {8, "stage-∞ in-degree closed forms"},
      {9, "swapping maps and stagewise recharge"},
      {10, "atomic Hecke reconstruction"},
      {11, "crystal string lemmas and tilde operators"},
      {12, "deterministic CLI output and bit-exact cache"},
  };

  std::int64_t cases = 0;
  for (const auto& [n, max_weight] : kSweep) {
    const Rank rank(n);
    GraphCache graphs;
    for (const Shape& shape : sweep_shapes(rank, max_weight)) {
      const std::string label = "n=" + std::to_string(n) + " λ=" + shape.weight().to_string();
      try {
        const Crystal c = generate(shape, rank);
        const AtomDecomposition d = decompose(c);
        run_element_criteria(SweepCase{c, d, graphs}, crit);
        ++cases;
      } catch (const std::exception& ex) {
        for (auto& cr : crit)
          if (cr.id != 12) cr.check(false, label + " raised: " + ex.what());
      }
    }
  }
  run_pinned(crit);
  run_determinism(cli, crit[11]);

  bool all = true;
  for (const auto& cr : crit) {
    all = all && cr.passed();
    std::cout << "Criterion " << cr.id << ": " << (cr.passed() ? "PASS" : "FAIL") << " " << cr.title << " ("
              << cr.checks << " checks, " << cr.failures << " failures)";
    if (cr.failures > 0) std::cout << " first: " << cr.first_failure;
    std::cout << "\n";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << cases << " sweep crystals, " << secs << " s\n";
  return all ? 0 : 1;
}
