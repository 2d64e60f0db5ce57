#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "morpho/error.hpp"
#include "morpho/formula.hpp"
#include "morpho/models.hpp"
#include "morpho/proof.hpp"
#include "morpho/semantics.hpp"
#include "morpho/spatial.hpp"
#include "morpho/truth_lattice.hpp"

namespace morpho::cli {

namespace {

constexpr const char* kVersion = "morpho " MORPHO_VERSION;

struct Options {
  std::string model;
  std::string formula;
  std::string at;
  std::string fuzzy;
  std::string a;
  std::string b;
  std::string selem;
  std::string kind = "min";
  std::string derivation;
  std::string bank;
  bool strict = false;
  bool raw = false;
};

std::string fixed9(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(9) << v;
  return s.str();
}

StateId state_of(const Model& m, const std::string& name) {
  auto s = m.find_state(name);
  if (!s) throw DomainError("unknown state '" + name + "'");
  return *s;
}

void print_set(const Model& m, const StateSet& s, std::ostream& out) {
  if (const auto& g = m.grid()) {
    for (int y = 0; y < g->height; ++y) {
      for (int x = 0; x < g->width; ++x) out << (s.contains(g->id(x, y)) ? '#' : '.');
      out << '\n';
    }
    return;
  }
  out << '{';
  bool first = true;
  for (StateId id : s.members()) {
    out << (first ? "" : ", ") << m.state_name(id);
    first = false;
  }
  out << "}\n";
}

void print_fuzzy(const Model& m, const FuzzySet& v, std::ostream& out) {
  for (StateId s = 0; s < v.size(); ++s) out << m.state_name(s) << ' ' << fixed9(v[s]) << '\n';
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Formula f = parse_formula(o.formula);
  const TruthLattice l(o.fuzzy.empty() ? LatticeKind::boolean : parse_lattice_kind(o.fuzzy));
  const Model m = load_model(o.model);
  const SatMap result = evaluate(m, f, l);
  if (!result.is_crisp()) {
    if (!o.at.empty()) {
      out << fixed9(result.fuzzy()[state_of(m, o.at)]) << '\n';
    } else {
      print_fuzzy(m, result.fuzzy(), out);
    }
    return 0;
  }
  const StateSet& s = result.crisp();
  if (!o.at.empty()) {
    const bool v = s.contains(state_of(m, o.at));
    out << (v ? "true" : "false") << '\n';
    return v ? 0 : 1;
  }
  if (s.is_full()) {
    out << "true\n";
    return 0;
  }
  out << "false\ncounterexample: " << m.state_name(s.complement().members().front()) << '\n';
  return 1;
}

int cmd_sat(const Options& o, std::ostream& out) {
  const Formula f = parse_formula(o.formula);
  const TruthLattice l(o.fuzzy.empty() ? LatticeKind::boolean : parse_lattice_kind(o.fuzzy));
  const Model m = load_model(o.model);
  const SatMap result = evaluate(m, f, l);
  if (result.is_crisp())
    print_set(m, result.crisp(), out);
  else
    print_fuzzy(m, result.fuzzy(), out);
  return 0;
}

int cmd_rcc8(const Options& o, std::ostream& out) {
  const Formula a = parse_formula(o.a);
  const Formula b = parse_formula(o.b);
  const Model m = load_model(o.model);
  const Rcc8Result r = rcc8_classify(m, a, b, o.selem);
  if (!o.raw) {
    out << to_string(r.relation) << '\n';
    return 0;
  }
  auto line = [&](const char* name, bool v) { out << name << ' ' << (v ? "true" : "false") << '\n'; };
  line("C", r.raw.C);
  line("DC", r.raw.DC);
  line("EC", r.raw.EC);
  line("PO", r.raw.PO);
  line("TPP", r.raw.TPP);
  line("TPPi", r.raw.TPPi);
  line("NTPP", r.raw.NTPP);
  line("NTPPi", r.raw.NTPPi);
  line("EQ", r.raw.EQ);
  return 0;
}

int cmd_nine(const Options& o, std::ostream& out) {
  const Formula a = parse_formula(o.a);
  const Formula b = parse_formula(o.b);
  const Model m = load_model(o.model);
  const NineIntersection n = nine_intersection(m, a, b, o.selem);
  for (const auto& row : n.cells) out << row[0] << ' ' << row[1] << ' ' << row[2] << '\n';
  return 0;
}

int cmd_dist(const Options& o, std::ostream& out) {
  const Formula a = parse_formula(o.a);
  const Formula b = parse_formula(o.b);
  const Model m = load_model(o.model);
  const Distance d = o.kind == "min" ? d_min(m, a, b, o.selem) : d_hausdorff(m, a, b, o.selem);
  out << d.str() << '\n';
  return 0;
}

int cmd_dir(const Options& o, std::ostream& out) {
  const Formula a = parse_formula(o.a);
  const Formula b = parse_formula(o.b);
  const Model m = load_model(o.model);
  const bool v = directional_check(m, a, b, o.selem);
  out << (v ? "true" : "false") << '\n';
  return v ? 0 : 1;
}

int cmd_prove(const Options& o, std::ostream& out) {
  const Derivation d = load_derivation(o.derivation);
  std::vector<Model> bank;
  std::vector<std::string> bank_files;
  if (!o.bank.empty()) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(o.bank)) throw ModelError("bank '" + o.bank + "' is not a directory");
    for (const auto& entry : fs::directory_iterator(o.bank))
      if (entry.is_regular_file()) bank_files.push_back(entry.path().string());
    std::sort(bank_files.begin(), bank_files.end());
    for (const auto& file : bank_files) bank.push_back(load_model(file));
    if (bank.empty()) throw ModelError("bank '" + o.bank + "' contains no model files");
  }
  const CheckReport r = check_derivation(d, bank);
  if (!r.accepted) {
    out << "rejected at line " << *r.failing_line << ": " << r.reason << '\n';
    return 1;
  }
  out << "accepted: system " << to_string(d.system) << ", " << d.lines.size() << " lines\n";
  if (!r.hypotheses.empty()) {
    out << "hypotheses:";
    for (auto k : r.hypotheses) out << ' ' << k;
    out << '\n';
  }
  if (!r.bank_relative.empty()) {
    out << "bank-relative lines:";
    for (auto k : r.bank_relative) out << ' ' << k;
    out << '\n';
  }
  if (!r.audited) return 0;
  out << "audit: " << r.models_audited << " models checked, " << r.models_skipped << " skipped, "
      << r.audit_failures.size() << " invalid lines\n";
  for (const auto& f : r.audit_failures)
    out << "invalid: line " << f.line << " in " << bank_files[f.model] << " at state " << f.state << '\n';
  return r.audit_failures.empty() ? 0 : 1;
}

int cmd_fmt(const Options& o, std::ostream& out) {
  out << print_formula(parse_formula(o.formula)) << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morphological modal logic over finite models", "morpho"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  Options o;
  const std::vector<std::string> lattices{"boolean", "goguen", "lukasiewicz"};
  auto subcommand = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->set_version_flag("--version", kVersion);
    return sub;
  };
  auto model_flag = [&](CLI::App* sub) { sub->add_option("--model", o.model, "Model file")->required(); };

  CLI::App* eval = subcommand("eval", "Evaluate a formula: global validity, or its value at one state");
  model_flag(eval);
  eval->add_option("--formula", o.formula, "Formula")->required();
  eval->add_option("--at", o.at, "State name");
  eval->add_option("--fuzzy", o.fuzzy, "Truth lattice")->check(CLI::IsMember(lattices));

  CLI::App* sat_cmd = subcommand("sat", "Print the satisfaction set of a formula");
  model_flag(sat_cmd);
  sat_cmd->add_option("--formula", o.formula, "Formula")->required();
  sat_cmd->add_option("--fuzzy", o.fuzzy, "Truth lattice")->check(CLI::IsMember(lattices));

  auto region_flags = [&](CLI::App* sub, bool selem_required) {
    model_flag(sub);
    sub->add_option("--a", o.a, "First region formula")->required();
    sub->add_option("--b", o.b, "Second region formula")->required();
    auto* se = sub->add_option("--selem", o.selem, "Structuring element name");
    if (selem_required) se->required();
  };

  CLI::App* rcc8 = subcommand("rcc8", "Classify two regions in RCC-8");
  region_flags(rcc8, true);
  auto* strict = rcc8->add_flag("--strict", o.strict, "Print the strict relation (default)");
  auto* raw = rcc8->add_flag("--raw", o.raw, "Print the raw predicate vector");
  strict->excludes(raw);

  CLI::App* nine = subcommand("nine", "Print the 9-intersection matrix (boundary, interior, exterior)");
  region_flags(nine, false);
  o.selem = std::string(kMainSelem);

  CLI::App* dist = subcommand("dist", "Morphological distance between two regions");
  region_flags(dist, true);
  dist->add_option("--kind", o.kind, "min or hausdorff")->check(CLI::IsMember({"min", "hausdorff"}));

  CLI::App* dir = subcommand("dir", "Check that region a lies in direction selem from region b");
  region_flags(dir, true);

  CLI::App* prove = subcommand("prove", "Check a derivation");
  prove->add_option("--derivation", o.derivation, "Derivation file")->required();
  prove->add_option("--bank", o.bank, "Directory of model files for invariance evidence and the soundness audit");

  CLI::App* fmt = subcommand("fmt", "Print a formula in canonical form");
  fmt->add_option("--formula", o.formula, "Formula")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (sat_cmd->parsed()) return cmd_sat(o, out);
    if (rcc8->parsed()) return cmd_rcc8(o, out);
    if (nine->parsed()) return cmd_nine(o, out);
    if (dist->parsed()) return cmd_dist(o, out);
    if (dir->parsed()) return cmd_dir(o, out);
    if (prove->parsed()) return cmd_prove(o, out);
    if (fmt->parsed()) return cmd_fmt(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace morpho::cli
