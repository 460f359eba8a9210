#ifndef KFORGE_CLI_HPP
#define KFORGE_CLI_HPP

// Command-line front end. run() never writes outside the given streams, so
// it can be driven from tests as well as from tools/kforge.cpp.
//
// Exit codes: 0 computed a verdict, 1 soundness failure or catalog
// counterexample, 2 input error, 3 desk-scale bound exceeded.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kforge/difftools.hpp"
#include "kforge/factor.hpp"
#include "kforge/gcd.hpp"
#include "kforge/groebner.hpp"
#include "kforge/io.hpp"
#include "kforge/poly.hpp"
#include "kforge/text.hpp"
#include "kforge/theorem.hpp"

namespace kforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnsound = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBound = 3;

struct Options {
  std::size_t n = 0;
  std::vector<std::string> exprs;
  std::string file;
  std::string instance;
  std::string phi;
  std::string g;
  std::string target;
  std::string arg;
  std::string order = "grlex";
  std::vector<std::size_t> vars;
  std::vector<std::size_t> keep;
  std::size_t slot = 1;
  std::size_t var = 1;
  std::size_t r = 0;
  unsigned power = 2;
  unsigned degree = 0;
  unsigned cap = 6;
  bool cap_given = false;
  int degree_bound = 8;
  std::size_t corpus = 25;
  std::string format = "text";
  bool timings = false;
  std::uint64_t seed = 0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

/// Setter for a comma separated index list. Kept as one token so that it
/// never swallows the positional polynomials that follow.
inline std::function<void(const std::string&)> index_list(std::vector<std::size_t>& target) {
  return [&target](const std::string& text) {
    target.clear();
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size() || v == 0)
        throw CLI::ValidationError("index list", "expected positive integers separated by commas, got \"" + text + "\"");
      target.push_back(v);
    }
    if (target.empty()) throw CLI::ValidationError("index list", "empty");
  };
}

inline std::string elapsed_ms(Clock::time_point t0) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  return std::to_string(ms);
}

/// Largest x<k> index mentioned in the expressions (at least 1).
inline std::size_t infer_arity(const std::vector<std::string>& exprs) {
  std::size_t n = 1;
  for (const auto& e : exprs)
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 'x') continue;
      std::size_t j = i + 1, v = 0;
      while (j < e.size() && std::isdigit(static_cast<unsigned char>(e[j])) && v < 1000000) v = v * 10 + (e[j++] - '0');
      n = std::max(n, v);
    }
  return n;
}

/// Parses a command-line expression; errors name the argument.
inline Poly parse_arg(const std::string& text, std::size_t n, const std::string& what) {
  try {
    return parse_poly(text, n);
  } catch (const ParseError& e) {
    throw InputError(what + " \"" + text + "\": " + e.what());
  }
}

/// Prints, re-parses and compares a polynomial before it is reported.
inline std::string checked(const Poly& p, const VarNamer& names = x_names()) {
  std::string s = to_string(p, names);
  if (parse_poly(to_string(p), p.ambient()) != p) throw VerificationFailure("printed polynomial does not re-parse");
  return s;
}

struct Inputs {
  std::size_t n = 0;
  std::vector<Poly> f;
  std::optional<Poly> g;
  std::optional<unsigned> cap;
};

/// Polynomials from --instance, --file, or inline expressions (in that order of preference).
inline Inputs gather(const Options& o) {
  Inputs in;
  if (!o.instance.empty()) {
    InstanceFile inst = load_instance(o.instance);
    in.n = inst.n;
    in.f = std::move(inst.f);
    in.g = std::move(inst.g);
    in.cap = inst.cap;
  } else {
    std::vector<std::string> all = o.exprs;
    if (!o.g.empty()) all.push_back(o.g);
    if (!o.target.empty()) all.push_back(o.target);
    if (!o.arg.empty()) all.push_back(o.arg);
    in.n = o.n ? o.n : infer_arity(all);
    if (!o.file.empty()) in.f = load_poly_list(o.file, in.n);
    for (std::size_t i = 0; i < o.exprs.size(); ++i)
      in.f.push_back(parse_arg(o.exprs[i], in.n, "argument " + std::to_string(i + 1)));
  }
  if (!o.g.empty()) in.g = parse_arg(o.g, in.n, "--g");
  if (o.cap_given) in.cap = o.cap;
  return in;
}

inline Inputs gather_nonempty(const Options& o, const char* verb) {
  Inputs in = gather(o);
  if (in.f.empty()) throw InputError(std::string(verb) + ": no polynomials given");
  return in;
}

inline const Poly& require_g(const Inputs& in, const char* verb) {
  if (!in.g) throw InputError(std::string(verb) + ": no g given (use --g or a 'g =' line)");
  return *in.g;
}

inline Endo gather_endo(const Options& o) {
  if (!o.phi.empty()) return load_endo(o.phi);
  std::size_t n = o.n ? o.n : infer_arity(o.exprs);
  Endo e{n, {}};
  for (std::size_t i = 0; i < o.exprs.size(); ++i)
    e.images.push_back(parse_arg(o.exprs[i], n, "argument " + std::to_string(i + 1)));
  if (e.images.size() != n)
    throw InputError("expected " + std::to_string(n) + " images, got " + std::to_string(e.images.size()));
  return e;
}

inline SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.seed = o.seed;
  s.limits.max_degree = o.degree_bound;
  return s;
}

inline FactorLimits limits(const Options& o) { return search_options(o).limits; }

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

/// A single-value report: bare value in text, "key: value" in kv.
inline Report value_report(const std::string& key, const std::string& value) {
  Report r;
  r.text(value);
  r.kv(key, value);
  return r;
}

inline void report_instance(Report& rep, const InstanceReport& ir, const Poly& g, const std::vector<Poly>& f) {
  rep.field("jacobian", checked(ir.jacobian));
  rep.field("g_divides_jacobian", yes_no(ir.jac_divisible));
  if (ir.witness_w) {
    // witnesses are re-verified against the printed form
    Poly back = parse_poly(to_string(*ir.witness_w), ir.witness_w->ambient());
    if (!divides(pow(g, 2), substitute(back, f))) throw VerificationFailure("printed witness fails g^2 | w(f)");
    rep.field("witness", checked(*ir.witness_w));
    rep.field("witness_degree", std::to_string(*ir.witness_degree));
  } else {
    rep.field("witness", "none");
  }
  rep.field("searched_up_to", std::to_string(ir.searched_up_to));
  rep.field("verdict", to_string(ir.verdict));
}

inline Report cmd_theorem2(const Options& o) {
  auto t0 = Clock::now();
  Inputs in = gather_nonempty(o, "theorem2");
  const Poly& g = require_g(in, "theorem2");
  unsigned cap = in.cap.value_or(o.cap);
  InstanceReport ir = verify_theorem2(in.f, g, cap, search_options(o));
  Report rep;
  rep.field("g", checked(g));
  rep.field("cap", std::to_string(cap));
  report_instance(rep, ir, g, in.f);
  if (o.timings) rep.field("time_ms", elapsed_ms(t0));
  return rep;
}

inline Report keller_report(const Endo& phi, const Options& o, bool with_audit) {
  Report rep;
  KellerReport kr = check_jacobian_condition(phi);
  rep.field("jacobian", checked(kr.jacobian));
  rep.field("keller", yes_no(kr.is_keller));
  if (with_audit) {
    squarefree_image_audit(phi, irreducible_corpus(phi.n, o.corpus, limits(o)), kr, limits(o));
    std::size_t ok = 0;
    for (const auto& e : kr.audit) ok += e.image_squarefree;
    rep.field("audit", std::to_string(ok) + "/" + std::to_string(kr.audit.size()) + " square-free images");
    for (const auto& e : kr.audit) rep.text("  " + to_string(e.w) + " -> " + (e.image_squarefree ? "square-free" : "not square-free"));
    rep.field("violations", std::to_string(kr.violations.size()));
  }
  if (!kr.is_keller) {
    auto w = non_squarefree_witness(phi, o.cap, search_options(o));
    if (w) {
      Poly img = phi.apply(parse_poly(to_string(w->w), phi.n));
      if (!divides(pow(w->g, 2), img) || image_is_squarefree(img))
        throw VerificationFailure("printed witness fails re-verification");
      rep.field("witness_w", checked(w->w));
      rep.field("witness_g", checked(w->g));
    } else {
      rep.field("witness_w", "none");
      rep.field("witness_g", "none");
    }
  }
  return rep;
}

inline Report automorphism_report(const Endo& phi) {
  Report rep;
  AutomorphismResult ar = is_automorphism(phi);
  rep.field("status", to_string(ar.status));
  if (ar.inverse) {
    std::vector<Poly> back;
    for (const auto& p : ar.inverse->images) back.push_back(parse_poly(to_string(p), phi.n));
    for (std::size_t i = 0; i < phi.n; ++i)
      if (substitute(back[i], phi.images) != Poly::variable(phi.n, i + 1))
        throw VerificationFailure("printed inverse fails the round trip");
    for (std::size_t i = 0; i < phi.n; ++i) rep.field("psi" + std::to_string(i + 1), checked(ar.inverse->images[i]));
  }
  return rep;
}

struct CatalogRow {
  std::string name;
  std::string kind;
  std::string verdict;
  std::string witness_degree;
  std::string time_ms;
};

inline int run_catalog(const std::string& dir, const Options& o, std::ostream& out) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError(dir + ": not a readable directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    auto ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".inst" || ext == ".endo")) files.push_back(entry.path());
  }
  if (ec) throw InputError(dir + ": " + ec.message());
  std::sort(files.begin(), files.end());

  // parse everything first so that a malformed file fails before any work
  struct Item {
    fs::path path;
    std::optional<InstanceFile> inst;
    std::optional<Endo> endo;
  };
  std::vector<Item> items;
  for (const auto& p : files) {
    Item it{p, {}, {}};
    if (p.extension() == ".inst") {
      it.inst = load_instance(p.string());
      if (!it.inst->g) throw InputError(p.string() + ": catalog instances need a 'g =' line");
    } else {
      it.endo = load_endo(p.string());
    }
    items.push_back(std::move(it));
  }

  std::vector<CatalogRow> rows;
  std::size_t counterexamples = 0, unsound = 0, inconclusive = 0;
  for (const auto& it : items) {
    auto t0 = Clock::now();
    CatalogRow row{it.path.filename().string(), it.inst ? "instance" : "endo", "", "-", ""};
    if (it.inst) {
      const auto& inst = *it.inst;
      unsigned cap = o.cap_given ? o.cap : inst.cap.value_or(o.cap);
      InstanceReport ir = verify_theorem2(inst.f, *inst.g, cap, search_options(o));
      auto dep = jacobian_row_dependence(inst.f, *inst.g, limits(o));
      if (dep.has_value() != ir.jac_divisible) ++unsound;
      counterexamples += ir.verdict == Verdict::CounterexampleFound;
      inconclusive += ir.verdict == Verdict::InconclusiveCapReached;
      row.verdict = to_string(ir.verdict);
      if (ir.witness_degree) row.witness_degree = std::to_string(*ir.witness_degree);
    } else {
      const Endo& phi = *it.endo;
      KellerReport kr = check_jacobian_condition(phi);
      AutomorphismResult ar = is_automorphism(phi);
      if (ar.status == AutomorphismStatus::Automorphism && !kr.is_keller) ++unsound;
      if (kr.is_keller) {
        squarefree_image_audit(phi, irreducible_corpus(phi.n, o.corpus, limits(o)), kr, limits(o));
        counterexamples += kr.violations.size();
        row.verdict = "Keller/" + to_string(ar.status);
      } else {
        auto w = non_squarefree_witness(phi, o.cap, search_options(o));
        if (w) row.witness_degree = std::to_string(w->w.total_degree());
        if (!w && !kr.jacobian.is_zero()) ++inconclusive;
        row.verdict = std::string("NotKeller/") + (w ? "WitnessFound" : "NoWitness") + "/" + to_string(ar.status);
      }
    }
    if (o.timings) row.time_ms = elapsed_ms(t0);
    rows.push_back(std::move(row));
  }

  if (o.format == "kv") {
    for (const auto& r : rows) {
      out << r.name << ".kind: " << r.kind << "\n";
      out << r.name << ".verdict: " << r.verdict << "\n";
      out << r.name << ".witness_degree: " << r.witness_degree << "\n";
      if (o.timings) out << r.name << ".time_ms: " << r.time_ms << "\n";
    }
  } else {
    std::size_t w0 = 4, w1 = 4, w2 = 7;
    for (const auto& r : rows) {
      w0 = std::max(w0, r.name.size());
      w1 = std::max(w1, r.kind.size());
      w2 = std::max(w2, r.verdict.size());
    }
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size() + 2, ' '); };
    std::string head = pad("file", w0) + pad("kind", w1) + pad("verdict", w2) + "witness_degree";
    if (o.timings) head += "  time_ms";
    out << head << "\n";
    for (const auto& r : rows) {
      std::string line = pad(r.name, w0) + pad(r.kind, w1) + pad(r.verdict, w2) + r.witness_degree;
      if (o.timings) line += std::string(std::max<std::size_t>(2, 16 - r.witness_degree.size()), ' ') + r.time_ms;
      out << line << "\n";
    }
  }
  const char* sep = o.format == "kv" ? ": " : " = ";
  out << "entries" << sep << rows.size() << "\n";
  out << "counterexamples" << sep << counterexamples << "\n";
  out << "soundness_failures" << sep << unsound << "\n";
  out << "inconclusive" << sep << inconclusive << "\n";
  return counterexamples || unsound ? kExitUnsound : kExitOk;
}

} // namespace detail

/// Runs one command line; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* s = std::getenv("KELLER_FORGE_SEED")) {
    try {
      std::size_t used = 0;
      o.seed = std::stoull(s, &used);
      if (used != std::string(s).size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      err << "error: KELLER_FORGE_SEED must be a non-negative integer\n";
      return kExitInput;
    }
  }

  CLI::App app{"kforge: exact polynomial algebra and jacobian divisibility checks"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every verb");

  using Action = std::function<int(std::ostream&)>;
  Action action;
  auto print = [&](std::function<Report()> make) {
    return [&o, make](std::ostream& os) {
      os << make().render(o.format == "kv");
      return kExitOk;
    };
  };

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--n", o.n, "Number of variables (default: largest x index used)")->check(CLI::PositiveNumber);
    auto cap = sub->add_option("--cap", o.cap, "Witness degree cap")->check(CLI::PositiveNumber);
    sub->add_option("--degree-bound", o.degree_bound, "Factorization total-degree bound")->check(CLI::PositiveNumber);
    sub->add_option("--corpus", o.corpus, "Irreducible audit corpus size");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "kv"}));
    sub->add_flag("--timings", o.timings, "Include wall-clock timings (output is then not reproducible)");
    sub->parse_complete_callback([&o, cap] { o.cap_given = cap->count() > 0; });
    return sub;
  };
  auto with_exprs = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("exprs", o.exprs, help);
    return sub;
  };

  // differential tools
  auto jac = with_exprs(add("jac", "Jacobian determinant of f1..fn"), "Polynomials f1..fn");
  jac->add_option("--instance", o.instance, "Instance file")->check(CLI::ExistingFile);
  jac->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "jac");
      return detail::value_report("jacobian", detail::checked(jacobian(in.f)));
    });
  });

  auto minor = with_exprs(add("minor", "Jacobian minor with respect to --vars"), "Polynomials f1..fm");
  minor->add_option_function<std::string>("--vars", detail::index_list(o.vars), "1-based variable indices, comma separated")
      ->required();
  minor->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "minor");
      return detail::value_report("minor", detail::checked(jacobian_minor(in.f, o.vars)));
    });
  });

  auto dg = with_exprs(add("dgcd", "gcd of all maximal jacobian minors"), "Polynomials f1..fm");
  dg->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "dgcd");
      auto d = dgcd(in.f);
      return detail::value_report("dgcd", d ? detail::checked(*d) : "all minors vanish");
    });
  });

  auto der = with_exprs(add("derive", "Apply the jacobian derivation with --arg in --slot"), "Polynomials f1..fm");
  der->add_option_function<std::string>("--vars", detail::index_list(o.vars), "1-based variable indices, comma separated")
      ->required();
  der->add_option("--slot", o.slot, "1-based slot replaced by the argument")->required();
  der->add_option("--arg", o.arg, "Polynomial the derivation is applied to")->required();
  der->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "derive");
      Poly p = detail::parse_arg(o.arg, in.n, "--arg");
      return detail::value_report("derivation", detail::checked(apply_derivation({in.f, o.slot, o.vars}, p)));
    });
  });

  // factorization and gcd
  auto sq = with_exprs(add("squarefree", "Square-freeness test"), "One polynomial");
  sq->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "squarefree");
      if (in.f.size() != 1) throw InputError("squarefree: expected one polynomial");
      return detail::value_report("squarefree", yes_no(is_squarefree(in.f[0])));
    });
  });

  auto fac = with_exprs(add("factor", "Factorization over Q"), "One polynomial");
  fac->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "factor");
      if (in.f.size() != 1) throw InputError("factor: expected one polynomial");
      Factorization fz = factor_multivariate(in.f[0], detail::limits(o));
      if (fz.expand(in.n) != in.f[0]) throw VerificationFailure("factor: product check failed");
      return detail::value_report("factorization", to_string(fz));
    });
  });

  auto gc = with_exprs(add("gcd", "Normalized gcd of two polynomials"), "Two polynomials");
  gc->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "gcd");
      if (in.f.size() != 2) throw InputError("gcd: expected two polynomials");
      return detail::value_report("gcd", detail::checked(gcd_poly(in.f[0], in.f[1])));
    });
  });

  // Groebner bases
  auto gb = with_exprs(add("groebner", "Reduced Groebner basis"), "Generators");
  gb->add_option("--file", o.file, "Generator file, one polynomial per line")->check(CLI::ExistingFile);
  gb->add_option("--order", o.order, "Monomial order")->check(CLI::IsMember({"lex", "grlex"}));
  gb->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "groebner");
      GroebnerBasis basis = buchberger(in.f, o.order == "lex" ? MonomialOrder::lex() : MonomialOrder::grlex());
      Report rep;
      rep.kv("order", basis.order.name());
      std::vector<std::string> parts;
      for (const auto& p : basis.gens) {
        rep.text(detail::checked(p));
        parts.push_back(detail::checked(p));
      }
      rep.kv("basis", detail::join(parts, "; "));
      return rep;
    });
  });

  auto el = with_exprs(add("eliminate", "Elimination ideal onto --keep"), "Generators");
  el->add_option("--file", o.file, "Generator file, one polynomial per line")->check(CLI::ExistingFile);
  el->add_option_function<std::string>("--keep", detail::index_list(o.keep), "1-based variables kept, comma separated")
      ->required();
  el->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "eliminate");
      std::vector<std::size_t> keep = o.keep;
      std::sort(keep.begin(), keep.end());
      keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
      GroebnerBasis basis = elimination_ideal(in.f, keep);
      VarNamer names = [keep](std::size_t j) { return "x" + std::to_string(keep[j - 1]); };
      Report rep;
      std::vector<std::string> parts;
      for (const auto& p : basis.gens) parts.push_back(detail::checked(p, names));
      for (const auto& s : parts) rep.text(s);
      if (parts.empty()) rep.text("(zero ideal)");
      rep.kv("basis", detail::join(parts, "; "));
      return rep;
    });
  });

  auto mem = with_exprs(add("member", "Subalgebra membership of --target in Q[f1..fm]"), "Generators f1..fm");
  mem->add_option("--target", o.target, "Polynomial to express")->required();
  mem->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "member");
      Poly target = detail::parse_arg(o.target, in.n, "--target");
      auto e = subalgebra_membership(target, in.f);
      if (!e) return detail::value_report("expression", "NotMember");
      VarNamer ys = [](std::size_t j) { return "y" + std::to_string(j); };
      if (substitute(*e, in.f) != target) throw VerificationFailure("member: expression does not compose back");
      return detail::value_report("expression", detail::checked(*e, ys));
    });
  });

  // theorem engine
  auto ann = with_exprs(add("annihilate", "Annihilator kernel basis (--degree) or irreducible annihilator search"),
                        "Polynomials f1..fm");
  ann->add_option("--instance", o.instance, "Instance file")->check(CLI::ExistingFile);
  ann->add_option("--g", o.g, "Irreducible polynomial g");
  ann->add_option("--power", o.power, "Power of g (1 or 2)")->check(CLI::IsMember({1, 2}));
  ann->add_option("--degree", o.degree, "Print the kernel basis up to this degree")->check(CLI::PositiveNumber);
  ann->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "annihilate");
      const Poly& g = detail::require_g(in, "annihilate");
      Report rep;
      if (o.degree) {
        auto basis = annihilator_kernel({in.f, g, o.power, o.degree}, o.degree);
        std::vector<std::string> parts;
        for (const auto& w : basis) parts.push_back(detail::checked(w));
        for (const auto& s : parts) rep.text(s);
        if (parts.empty()) rep.text("(empty kernel)");
        rep.kv("kernel", detail::join(parts, "; "));
        return rep;
      }
      unsigned cap = in.cap.value_or(o.cap);
      AnnihilatorResult res = find_irreducible_annihilator({in.f, g, o.power, cap}, detail::search_options(o));
      if (res.witness) {
        if (!divides(pow(g, o.power), substitute(parse_poly(to_string(*res.witness), in.f.size()), in.f)))
          throw VerificationFailure("annihilate: printed witness fails re-verification");
        rep.field("witness", detail::checked(*res.witness));
        rep.field("degree", std::to_string(res.witness->total_degree()));
      } else {
        rep.field("witness", "CapReached");
      }
      rep.field("searched_up_to", std::to_string(res.searched_up_to));
      return rep;
    });
  });

  auto l1 = with_exprs(add("lemma1", "Jacobian row dependence modulo g"), "Polynomials f1..fn");
  l1->add_option("--instance", o.instance, "Instance file")->check(CLI::ExistingFile);
  l1->add_option("--g", o.g, "Irreducible polynomial g");
  l1->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "lemma1");
      const Poly& g = detail::require_g(in, "lemma1");
      auto s = jacobian_row_dependence(in.f, g, detail::limits(o));
      if (!s) return detail::value_report("dependence", "Independent");
      Report rep;
      for (std::size_t i = 0; i < s->size(); ++i) rep.field("s" + std::to_string(i + 1), detail::checked((*s)[i]));
      return rep;
    });
  });

  auto l4 = with_exprs(add("lemma4", "Irreducible recombination of u1 + u2 with coprime degrees"), "u1 and u2");
  l4->add_option("--r", o.r, "Number of leading parameter variables");
  l4->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "lemma4");
      if (in.f.size() != 2) throw InputError("lemma4: expected u1 and u2");
      CoprimeSplit cs = combine_coprime(in.f[0], in.f[1], o.r, detail::limits(o));
      Report rep;
      rep.field("w1", detail::checked(cs.w1));
      rep.field("w2", detail::checked(cs.w2));
      return rep;
    });
  });

  auto l5 = with_exprs(add("lemma5", "Cofactors v1*w + v2*dw/dx_i = v with v free of x_i"), "Irreducible w");
  l5->add_option("--var", o.var, "1-based variable index i")->check(CLI::PositiveNumber);
  l5->callback([&] {
    action = print([&] {
      auto in = detail::gather_nonempty(o, "lemma5");
      if (in.f.size() != 1) throw InputError("lemma5: expected one polynomial");
      BezoutCofactor bc = bezout_cofactor(in.f[0], o.var, detail::limits(o));
      Report rep;
      rep.field("v1", detail::checked(bc.v1));
      rep.field("v2", detail::checked(bc.v2));
      rep.field("v", detail::checked(bc.v));
      return rep;
    });
  });

  auto t2 = with_exprs(add("theorem2", "Check g | jac(f) against an irreducible w with g^2 | w(f)"),
                       "Polynomials f1..fn");
  t2->add_option("--instance", o.instance, "Instance file")->check(CLI::ExistingFile);
  t2->add_option("--g", o.g, "Irreducible polynomial g");
  t2->callback([&] { action = print([&] { return detail::cmd_theorem2(o); }); });

  auto kel = with_exprs(add("keller", "Jacobian condition, square-free audit and witness"), "Images phi1..phin");
  kel->add_option("--phi", o.phi, "Endomorphism file")->check(CLI::ExistingFile);
  kel->callback([&] { action = print([&] { return detail::keller_report(detail::gather_endo(o), o, true); }); });

  auto wit = with_exprs(add("witness", "Irreducible w with non-square-free image"), "Images phi1..phin");
  wit->add_option("--phi", o.phi, "Endomorphism file")->check(CLI::ExistingFile);
  wit->callback([&] { action = print([&] { return detail::keller_report(detail::gather_endo(o), o, false); }); });

  auto aut = with_exprs(add("automorphism", "Invertibility with verified inverse"), "Images phi1..phin");
  aut->add_option("--phi", o.phi, "Endomorphism file")->check(CLI::ExistingFile);
  aut->callback([&] { action = print([&] { return detail::automorphism_report(detail::gather_endo(o)); }); });

  std::string dir;
  auto cat = add("catalog", "Run every .inst and .endo file of a directory");
  cat->add_option("dir", dir, "Catalog directory")->required();
  cat->callback([&] { action = [&](std::ostream& os) { return detail::run_catalog(dir, o, os); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return action(out);
  } catch (const DegreeBoundExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBound;
  } catch (const VerificationFailure& e) {
    err << "soundness failure: " << e.what() << "\n";
    return kExitUnsound;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

} // namespace kforge::cli

#endif // KFORGE_CLI_HPP
