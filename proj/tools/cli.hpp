#pragma once

// Command-line front end.  dispatch() is the whole program; main() only
// forwards argv and the standard streams.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "atomcharge/affine_graph.hpp"
#include "atomcharge/atoms.hpp"
#include "atomcharge/charge.hpp"
#include "atomcharge/crystal.hpp"
#include "atomcharge/errors.hpp"
#include "atomcharge/verify.hpp"

namespace atomcharge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

struct Options {
  int rank = 0;
  std::string weight;
  std::string mu;
  std::string stage = "0";
  std::string method = "new";
  std::string format = "text";
  std::string suite = "all";
  int max_weight = 4;
  std::size_t max_elements = kDefaultMaxElements;
  std::string cache;
  std::string out;
};

inline std::vector<int> parse_csv(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput(flag + ": '" + item + "' is not an integer");
    }
    if (used != item.size()) throw InvalidInput(flag + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput(flag + " must not be empty");
  return out;
}

/// Pads a comma-separated vector with zeros to rank+1 coordinates.
inline Weight parse_weight(const std::string& text, Rank rank, const std::string& flag) {
  if (text.empty()) throw InvalidInput(flag + " is required");
  std::vector<int> v = parse_csv(text, flag);
  const auto letters = static_cast<std::size_t>(rank.letters());
  if (v.size() > letters)
    throw InvalidInput(flag + " has " + std::to_string(v.size()) + " entries but rank " + std::to_string(rank.value()) +
                       " allows at most " + std::to_string(letters));
  v.resize(letters, 0);
  return Weight(std::move(v));
}

inline Stage parse_stage(const std::string& text) {
  if (text == "inf") return Stage::infinity();
  std::size_t used = 0;
  int m = 0;
  try {
    m = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw InvalidInput("--stage must be a nonnegative integer or 'inf'");
  }
  if (used != text.size() || m < 0) throw InvalidInput("--stage must be a nonnegative integer or 'inf'");
  return Stage::finite(m);
}

inline void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw InvalidInput("--format must be one of " + list + " for this command");
}

/// Crystals stored as JSON files keyed by rank and shape.
class CrystalStore {
 public:
  CrystalStore(std::string dir, std::size_t max_elements) : dir_(std::move(dir)), max_elements_(max_elements) {}

  Crystal get(const Shape& shape, Rank rank) const {
    if (dir_.empty()) return generate(shape, rank, max_elements_);
    const std::filesystem::path file = path_for(shape, rank);
    if (std::filesystem::exists(file)) {
      std::ifstream in(file);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput("cache file " + file.string() + " is not valid JSON: " + ex.what());
      }
      Crystal c = Crystal::from_json(j);
      if (c.rank() != rank.value() || c.shape() != shape)
        throw InvalidInput("cache file " + file.string() + " describes a different crystal");
      return c;
    }
    Crystal c = generate(shape, rank, max_elements_);
    std::filesystem::create_directories(dir_);
    std::ofstream out(file);
    out << c.to_json().dump() << "\n";
    return c;
  }

  std::filesystem::path path_for(const Shape& shape, Rank rank) const {
    std::string name = "crystal_n" + std::to_string(rank.value()) + "_";
    for (std::size_t a = 0; a < shape.parts().size(); ++a) name += (a ? "-" : "") + std::to_string(shape.parts()[a]);
    return std::filesystem::path(dir_) / (name + ".json");
  }

 private:
  std::string dir_;
  std::size_t max_elements_;
};

struct Context {
  Options opt;
  std::ostream& out;
  std::ostream& err;

  Rank rank() const {
    if (opt.rank < 1) throw InvalidInput("--rank must be a positive integer");
    return Rank(opt.rank);
  }
  Shape shape() const { return Shape(parse_weight(opt.weight, rank(), "--weight").coords, rank()); }
  CrystalStore store() const { return CrystalStore(opt.cache, opt.max_elements); }
  Crystal crystal() const { return store().get(shape(), rank()); }
};

inline int run_kostka(Context& ctx) {
  require_format(ctx.opt, {"text", "json"});
  const Shape shape = ctx.shape();
  const Weight mu = parse_weight(ctx.opt.mu, ctx.rank(), "--mu");
  const KostkaMethod method = parse_kostka_method(ctx.opt.method);
  HalfLaurentPolynomial k = method == KostkaMethod::LS || method == KostkaMethod::Count
                                ? kostka(shape, mu, method, ctx.opt.max_elements)
                                : kostka(ctx.crystal(), mu, method);
  if (ctx.opt.format == "json") {
    nlohmann::json j = {{"rank", ctx.opt.rank}, {"lambda", shape.parts()}, {"mu", mu.coords},
                        {"method", ctx.opt.method}, {"polynomial", k.to_json()}, {"text", k.to_string()}};
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << k.to_string() << "\n";
  }
  return kExitOk;
}

inline int run_crystal(Context& ctx) {
  require_format(ctx.opt, {"text", "json"});
  const Crystal c = ctx.crystal();
  if (ctx.opt.format == "json") {
    ctx.out << c.to_json().dump() << "\n";
    return kExitOk;
  }
  ctx.out << "B" << c.shape().weight().to_string() << " rank " << c.rank() << ": " << c.size() << " elements\n";
  for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x)
    ctx.out << x << "\t" << c.tableau(x).to_string() << "\t" << c.weight(x).to_string() << "\n";
  return kExitOk;
}

inline int run_atoms(Context& ctx) {
  require_format(ctx.opt, {"text", "json"});
  const Crystal c = ctx.crystal();
  const AtomDecomposition d = decompose(c);
  if (ctx.opt.format == "json") {
    ctx.out << d.to_json().dump(2) << "\n";
    return kExitOk;
  }
  for (std::size_t a = 0; a < d.atoms.size(); ++a) {
    const Atom& atom = d.atoms[a];
    ctx.out << "atom " << a << ": highest weight " << atom.highest_weight.to_string() << ", size " << atom.size()
            << ", Z = " << atom.z.to_string() << "\n";
  }
  return kExitOk;
}

inline int run_graph(Context& ctx) {
  require_format(ctx.opt, {"text", "dot", "json"});
  const Weight base = parse_weight(ctx.opt.weight, ctx.rank(), "--weight");
  const TwistedGraph g = build_graph(base, parse_stage(ctx.opt.stage));
  if (ctx.opt.format == "json") {
    ctx.out << g.to_json().dump(2) << "\n";
  } else {
    ctx.out << g.to_dot();
  }
  return kExitOk;
}

inline int run_recharge(Context& ctx) {
  require_format(ctx.opt, {"text", "json"});
  const Crystal c = ctx.crystal();
  const AtomDecomposition d = decompose(c);
  const Stage stage = parse_stage(ctx.opt.stage);
  const RechargeTable t = recharge_table(c, d, stage);
  if (!ctx.opt.mu.empty()) {
    const Weight mu = parse_weight(ctx.opt.mu, ctx.rank(), "--mu");
    HalfLaurentPolynomial p;
    for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x)
      if (c.weight(x) == mu) p.add_term(t.values[static_cast<std::size_t>(x)].doubled(), 1);
    if (ctx.opt.format == "json") {
      ctx.out << nlohmann::json{{"stage", stage.to_string()}, {"mu", mu.coords}, {"polynomial", p.to_json()},
                                {"text", p.to_string()}}
                     .dump(2)
              << "\n";
    } else {
      ctx.out << p.to_string() << "\n";
    }
    return kExitOk;
  }
  if (ctx.opt.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x)
      rows.push_back({{"id", x}, {"weight", c.weight(x).coords},
                      {"recharge_doubled", t.values[static_cast<std::size_t>(x)].doubled()}});
    ctx.out << nlohmann::json{{"stage", stage.to_string()}, {"values", rows}}.dump(2) << "\n";
    return kExitOk;
  }
  for (ElementId x = 0; x < static_cast<ElementId>(c.size()); ++x)
    ctx.out << x << "\t" << c.tableau(x).to_string() << "\t" << c.weight(x).to_string() << "\t"
            << t.values[static_cast<std::size_t>(x)].to_string() << "\n";
  return kExitOk;
}

inline int run_hecke(Context& ctx) {
  require_format(ctx.opt, {"text", "json"});
  const Crystal c = ctx.crystal();
  const HeckeExpansion h = hecke_atomic_expansion(decompose(c));
  if (ctx.opt.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (auto it = h.rbegin(); it != h.rend(); ++it)
      j.push_back({{"mu", it->first.coords}, {"coefficient", it->second.to_json()}, {"text", hecke_to_string(it->second)}});
    ctx.out << j.dump(2) << "\n";
    return kExitOk;
  }
  for (auto it = h.rbegin(); it != h.rend(); ++it) ctx.out << it->first.to_string() << ": " << hecke_to_string(it->second) << "\n";
  return kExitOk;
}

inline int run_verify_command(Context& ctx) {
  require_format(ctx.opt, {"text", "json"});
  if (ctx.opt.max_weight < 0) throw InvalidInput("--max-weight must be nonnegative");
  const int max_rank = ctx.opt.rank == 0 ? 2 : ctx.rank().value();
  suite_names(ctx.opt.suite);  // rejects unknown names before any work
  const CrystalStore store = ctx.store();
  const auto reports = run_verify(ctx.opt.suite, SweepBounds::up_to(max_rank, ctx.opt.max_weight),
                                  [&store](const Shape& s, Rank r) { return store.get(s, r); });
  bool ok = true;
  nlohmann::json j = nlohmann::json::array();
  for (const auto& rep : reports) {
    ok = ok && rep.ok();
    if (ctx.opt.format == "json") {
      j.push_back(rep.to_json());
    } else {
      ctx.out << rep.to_text();
    }
  }
  if (ctx.opt.format == "json") ctx.out << j.dump(2) << "\n";
  return ok ? kExitOk : kExitFailure;
}

/// Runs one command; args excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kostka–Foulkes polynomials and charge statistics on type A crystals"};
  app.require_subcommand(1);
  Options opt;

  struct Verb {
    const char* name;
    const char* help;
    int (*run)(Context&);
  };
  const std::vector<Verb> verbs = {
      {"kostka", "Kostka–Foulkes polynomial K_{λ,μ}(q)", run_kostka},
      {"crystal", "List or dump the crystal B(λ)", run_crystal},
      {"atoms", "Atomic decomposition of B(λ)", run_atoms},
      {"graph", "Twisted Bruhat graph on I(λ′) at a stage", run_graph},
      {"recharge", "Recharge values at a stage", run_recharge},
      {"hecke", "Atomic expansion coefficients a_{μ,λ}(v)", run_hecke},
      {"verify", "Run property suites over a sweep of crystals", run_verify_command},
  };
  std::vector<CLI::App*> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("--rank", opt.rank, "Rank n of A_n");
    sub->add_option("--weight", opt.weight, "Highest weight λ as comma-separated parts");
    sub->add_option("--mu", opt.mu, "Weight μ as comma-separated parts");
    sub->add_option("--stage", opt.stage, "Stage m or 'inf'");
    sub->add_option("--method", opt.method, "new, ls, llt or count");
    sub->add_option("--format", opt.format, "text, json or dot");
    sub->add_option("--suite", opt.suite, "oracles, atoms, gammam, arrows, swapping, strings, hecke or all");
    sub->add_option("--max-weight", opt.max_weight, "Largest |λ| in a verify sweep");
    sub->add_option("--max-elements", opt.max_elements, "Crystal size bound");
    sub->add_option("--cache", opt.cache, "Directory for generated crystals");
    sub->add_option("--out", opt.out, "Write output to this file");
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitInvalid;
  }

  std::ostringstream buffer;
  Context ctx{opt, buffer, err};
  int status = kExitOk;
  try {
    for (std::size_t a = 0; a < verbs.size(); ++a)
      if (subs[a]->parsed()) status = verbs[a].run(ctx);
  } catch (const InvalidInput& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitInvalid;
  } catch (const SizeLimitExceeded& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitInvalid;
  } catch (const InternalError& ex) {
    err << "internal error: " << ex.what() << "\n";
    return kExitFailure;
  }

  if (opt.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << opt.out << " for writing\n";
      return kExitInvalid;
    }
    file << buffer.str();
  }
  return status;
}

}  // namespace atomcharge::cli
