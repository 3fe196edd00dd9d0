#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "symwcet/awcet.hpp"
#include "symwcet/oracle.hpp"
#include "symwcet/pipeline.hpp"

namespace symwcet::cli {

namespace {

using nlohmann::json;

struct SweepRange {
  std::string id;
  Cycles lo = 0;
  Cycles hi = 0;
};

struct RunConfig {
  std::string command;
  std::string input;
  std::vector<std::string> binds;
  std::string format = "text";
  std::size_t max_paths = PathBudget{}.max_paths;
  std::optional<std::size_t> fuel;
  std::string sweep;
  bool self_check = false;
  bool renamed = false;
  bool stats = false;

  bool json() const { return format == "json"; }
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Cycles parse_count(const std::string& s, const std::string& what) {
  Cycles v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
    throw UsageError("invalid " + what + " '" + s + "'");
  return v;
}

Bindings parse_bindings(const std::vector<std::string>& binds) {
  Bindings rho;
  for (const auto& b : binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("binding must be key=value, got '" + b + "'");
    rho[b.substr(0, eq)] = parse_bound_value(b.substr(eq + 1));
  }
  return rho;
}

SweepRange parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  const auto dots = text.find("..", eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || eq == 0 || dots == std::string::npos)
    throw UsageError("sweep must be id=lo..hi, got '" + text + "'");
  SweepRange r{text.substr(0, eq), parse_count(text.substr(eq + 1, dots - eq - 1), "sweep bound"),
               parse_count(text.substr(dots + 2), "sweep bound")};
  if (r.lo > r.hi) throw UsageError("empty sweep range '" + text + "'");
  return r;
}

json path_json(const Path& p) { return json(p); }

void emit(const RunConfig& cfg, std::ostream& out, const json& report, const std::string& text) {
  if (cfg.json()) {
    out << report.dump(2) << '\n';
  } else {
    out << text;
  }
}

int cmd_check(const RunConfig& cfg, const Program& p, std::ostream& out) {
  const auto a = analyze(p);
  json loops = json::array();
  std::string text = "OK " + p.name + ": " + std::to_string(p.cfg.size()) + " blocks, " +
                     std::to_string(p.cfg.edges().size()) + " edges, " + std::to_string(a.forest.size()) + " loops\n";
  for (const auto& l : a.forest.loops()) {
    json body = json::array();
    std::string members;
    for (auto b : l.body) {
      body.push_back(p.cfg.id(b));
      members += (members.empty() ? "" : ",") + p.cfg.id(b);
    }
    const std::string header = p.cfg.id(l.header);
    const json parent = l.parent ? json(p.cfg.id(a.forest.loop(*l.parent).header)) : json(nullptr);
    const std::string bound = l.bound ? l.bound->to_string() : "x_" + header;
    loops.push_back({{"header", header}, {"parent", parent}, {"bound", bound}, {"body", body}});
    text += "loop " + header + (l.parent ? " in " + parent.get<std::string>() : "") + ": bound " + bound + ", body {" +
            members + "}\n";
  }
  emit(cfg, out,
       {{"command", "check"}, {"ok", true}, {"name", p.name}, {"blocks", p.cfg.size()},
        {"edges", p.cfg.edges().size()}, {"loops", loops}},
       text);
  return kOk;
}

int cmd_tree(const RunConfig& cfg, const Program& p, std::ostream& out) {
  const auto a = analyze(p);
  json renames = json::object();
  for (const auto& [block, labels] : a.base.renames) renames[block] = labels;
  emit(cfg, out,
       {{"command", "tree"}, {"ok", true}, {"tree", to_sexpr(a.tree, false)}, {"renamed", to_sexpr(a.tree, true)},
        {"renames", renames}},
       to_sexpr(a.tree, cfg.renamed) + "\n");
  return kOk;
}

json identifiers_json(const Formula& w) {
  const auto ids = identifiers(w);
  return {{"wcets", ids.wcets}, {"integers", ids.integers}, {"loops", ids.loops}};
}

int cmd_formula(const RunConfig& cfg, const Program& p, std::ostream& out) {
  const auto a = analyze(p);
  const auto f = build_formula(a, cfg.fuel.value_or(default_fuel()));
  std::string text = f.simplified.to_string() + "\n";
  if (cfg.stats) {
    text += "initial operands: " + std::to_string(f.raw.operand_count()) + "\n";
    text += "final operands: " + std::to_string(f.simplified.operand_count()) + "\n";
    text += "rewrite steps: " + std::to_string(f.steps) + "\n";
  }
  emit(cfg, out,
       {{"command", "formula"}, {"ok", true}, {"formula", f.simplified.to_string()},
        {"initial_operands", f.raw.operand_count()}, {"final_operands", f.simplified.operand_count()},
        {"steps", f.steps}, {"identifiers", identifiers_json(f.simplified)}},
       text);
  return kOk;
}

int cmd_wcet(const RunConfig& cfg, const Program& p, std::ostream& out, std::ostream& err) {
  const auto a = analyze(p);
  const auto rho = parse_bindings(cfg.binds);
  const auto f = build_formula(a, cfg.fuel.value_or(default_fuel()));
  const auto w = evaluate(f.simplified, rho, a.lattice);
  const Cycles wcet = w.seq()[0];
  json report{{"command", "wcet"}, {"ok", true}, {"wcet", wcet}, {"abstract", w.to_string()}};
  if (cfg.self_check) {
    const Cycles raw = evaluate(f.raw, rho, a.lattice).seq()[0];
    report["self_check"] = {{"raw_wcet", raw}, {"ok", raw == wcet}};
    if (raw != wcet) {
      report["ok"] = false;
      if (!cfg.json()) err << "self-check failed: raw formula gives " << raw << ", simplified gives " << wcet << '\n';
      emit(cfg, out, report, std::to_string(wcet) + "\n");
      return kUnsound;
    }
  }
  emit(cfg, out, report, std::to_string(wcet) + "\n");
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, const Program& p, std::ostream& out, std::ostream& err) {
  if (cfg.sweep.empty()) throw UsageError("sweep needs --sweep id=lo..hi");
  const auto range = parse_sweep(cfg.sweep);
  auto rho = parse_bindings(cfg.binds);
  if (rho.count(range.id)) throw UsageError("'" + range.id + "' is both bound and swept");
  const auto a = analyze(p);
  const auto f = build_formula(a, cfg.fuel.value_or(default_fuel()));

  json rows = json::array();
  std::string text = range.id + ",wcet\n";
  bool ok = true;
  for (Cycles v = range.lo;; ++v) {
    rho[range.id] = v;
    const Cycles wcet = evaluate(f.simplified, rho, a.lattice).seq()[0];
    json row{{"value", v}, {"wcet", wcet}};
    if (cfg.self_check) {
      const Cycles raw = evaluate(f.raw, rho, a.lattice).seq()[0];
      row["raw_wcet"] = raw;
      if (raw != wcet) {
        ok = false;
        if (!cfg.json()) err << "self-check failed at " << range.id << "=" << v << ": " << raw << " != " << wcet << '\n';
      }
    }
    rows.push_back(row);
    text += std::to_string(v) + "," + std::to_string(wcet) + "\n";
    if (v == range.hi) break;
  }
  emit(cfg, out, {{"command", "sweep"}, {"ok", ok}, {"parameter", range.id}, {"formula", f.simplified.to_string()},
                  {"rows", rows}},
       text);
  return ok ? kOk : kUnsound;
}

int cmd_oracle(const RunConfig& cfg, const Program& p, std::ostream& out) {
  const auto concrete = instantiate(p, parse_bindings(cfg.binds));
  const auto a = analyze(concrete);
  PathBudget budget;
  budget.max_paths = cfg.max_paths;

  const auto inclusion = check_path_inclusion(concrete.cfg, a.forest, a.base.tree, budget);
  const auto soundness = check_soundness(a.tree, a.lattice, budget);
  const auto f = build_formula(a, cfg.fuel.value_or(default_fuel()));
  const Cycles formula_wcet = evaluate(f.simplified, {}, a.lattice).seq()[0];
  const bool formula_ok = formula_wcet == soundness.computed;
  const bool ok = inclusion.ok && soundness.ok && formula_ok;

  json violations = json::array();
  for (const auto& v : soundness.violations) {
    violations.push_back(
        {{"subtree", v.subtree}, {"e", v.e}, {"n", v.n}, {"path_wcet", v.path_wcet}, {"bound", v.bound}});
  }
  const json report{
      {"command", "oracle"},
      {"ok", ok},
      {"inclusion",
       {{"ok", inclusion.ok},
        {"cfg_paths", inclusion.cfg_paths},
        {"tree_paths", inclusion.tree_paths},
        {"counterexample", inclusion.counterexample ? path_json(*inclusion.counterexample) : json(nullptr)}}},
      {"soundness",
       {{"ok", soundness.ok},
        {"computed", soundness.computed},
        {"exact", soundness.exact},
        {"pessimism_percent", soundness.pessimism_percent},
        {"subtrees_checked", soundness.subtrees_checked},
        {"violations", violations}}},
      {"formula", {{"ok", formula_ok}, {"wcet", formula_wcet}}},
  };
  if (!ok || cfg.json()) {
    out << report.dump(2) << '\n';
  } else {
    out << "OK: " << inclusion.cfg_paths << " CFG paths found among " << inclusion.tree_paths << " tree paths\n"
        << "wcet " << soundness.computed << ", exact " << soundness.exact << ", pessimism "
        << soundness.pessimism_percent << "%\n"
        << soundness.subtrees_checked << " subtrees checked\n";
  }
  return ok ? kOk : kUnsound;
}

void report_error(const RunConfig& cfg, std::ostream& out, std::ostream& err, const std::string& kind,
                  const std::string& message) {
  if (cfg.json()) {
    out << json{{"command", cfg.command}, {"ok", false}, {"error", {{"kind", kind}, {"message", message}}}}.dump(2)
        << '\n';
  } else {
    err << "error: " << kind << ": " << message << '\n';
  }
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IrreducibleLoop:
    case ErrorKind::MissingLoopBound:
    case ErrorKind::SymbolicValuePresent:
    case ErrorKind::IncomparableLoops:
    case ErrorKind::NotMultiple:
    case ErrorKind::Overflow:
      return kRefused;
    case ErrorKind::FuelExhausted:
    case ErrorKind::PathBudgetExceeded:
      return kBudget;
    default:
      return kUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Parametric WCET analysis over control-flow trees", "symwcet"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--input,-i", cfg.input, "Program document (JSON)")->required();
  app.add_option("--bind,-b", cfg.binds, "Binding key=value (repeatable)");
  app.add_option("--format,-f", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-paths", cfg.max_paths, "Oracle path budget");
  app.add_option("--fuel", cfg.fuel, "Rewrite step budget (default $SYMWCET_FUEL or 10000)");
  app.add_option("--sweep", cfg.sweep, "Swept parameter, id=lo..hi");
  app.add_flag("--self-check", cfg.self_check, "Also evaluate the unsimplified formula and compare");
  app.add_flag("--renamed", cfg.renamed, "tree: print unique labels instead of block ids");
  app.add_flag("--stats", cfg.stats, "formula: print operand counts");
  for (const auto* name : {"check", "tree", "formula", "wcet", "sweep", "oracle"}) {
    app.add_subcommand(name, "")->callback([&cfg, name] { cfg.command = name; });
  }
  app.get_subcommand("check")->description("Validate the document and report its loops");
  app.get_subcommand("tree")->description("Print the control-flow tree");
  app.get_subcommand("formula")->description("Print the simplified WCET formula");
  app.get_subcommand("wcet")->description("Instantiate the formula with --bind values");
  app.get_subcommand("sweep")->description("Evaluate the formula over a parameter range");
  app.get_subcommand("oracle")->description("Check the analysis against exhaustive path enumeration");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const auto program = load_program(cfg.input);
    if (cfg.command == "check") return cmd_check(cfg, program, out);
    if (cfg.command == "tree") return cmd_tree(cfg, program, out);
    if (cfg.command == "formula") return cmd_formula(cfg, program, out);
    if (cfg.command == "wcet") return cmd_wcet(cfg, program, out, err);
    if (cfg.command == "sweep") return cmd_sweep(cfg, program, out, err);
    return cmd_oracle(cfg, program, out);
  } catch (const UsageError& e) {
    report_error(cfg, out, err, "usage", e.what());
    return kUsage;
  } catch (const Error& e) {
    report_error(cfg, out, err, std::string(to_string(e.kind())), e.what());
    return exit_code(e.kind());
  }
}

}  // namespace symwcet::cli
