#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ssi/catalog.hpp"
#include "ssi/proof.hpp"
#include "ssi/search.hpp"
#include "ssi/semantics.hpp"
#include "ssi/syntax.hpp"
#include "ssi/text.hpp"

namespace ssi::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FrameClass class_named(const std::string& name) {
  if (auto c = frame_class_by_name(name)) return *c;
  std::string known;
  for (const auto& n : frame_class_names()) known += (known.empty() ? "" : ", ") + n;
  throw UsageError("unknown frame class '" + name + "' (known: " + known + ")");
}

void check_bound(std::size_t n) {
  if (n < 1 || n > max_enumerated_worlds)
    throw UsageError("--max-n must be between 1 and " + std::to_string(max_enumerated_worlds));
}

Formula formula_arg(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw UsageError("formula " + std::string(e.what()));
  }
}

std::string witness_json(const CountermodelReport& r) {
  return "{\"frame_size\":" + std::to_string(r.frame_size) + ",\"world\":" + std::to_string(r.world) +
         ",\"model\":" + model_to_json(r.model) + "}";
}

/// Witnesses are re-evaluated before they are shown.
void recheck(const CountermodelReport& r, const Formula& f) {
  if (eval(r.model, r.world, f) || !r.model.frame().is_normal(r.world))
    throw std::logic_error("countermodel did not re-verify");
}

struct Options {
  std::string formula;
  std::string cls = "s2_0";
  std::size_t max_n = 3;
  unsigned threads = 1;
  bool expect_valid = false;
  bool expect_invalid = false;
  bool json = false;
  bool unicode = false;
  bool metrics = false;
  std::string model_file;
  std::size_t world = 0;
  std::string target = "core";
  std::string system;
  std::string script;
  std::size_t spotcheck = 0;
  std::string spot_class;
  std::string json_file;
};

std::string_view language_name(const Formula& f) {
  if (in_language(f, Language::core)) return "core";
  if (in_language(f, Language::strict)) return "strict";
  if (in_language(f, Language::box)) return "box";
  return "full";
}

int cmd_parse(const Options& o, std::ostream& out) {
  const Formula f = formula_arg(o.formula);
  if (o.json)
    out << to_json(f) << "\n";
  else
    out << (o.unicode ? print_unicode(f) : print(f)) << "\n";
  if (o.metrics) {
    out << "weight " << weight(f) << "\n";
    out << "modal_depth " << modal_depth(f) << "\n";
    out << "language " << language_name(f) << "\n";
  }
  return ok;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Formula f = formula_arg(o.formula);
  Model m = [&] {
    try {
      return model_from_json(read_file(o.model_file));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if (o.world >= m.frame().size())
    throw UsageError("world " + std::to_string(o.world) + " not in a " + std::to_string(m.frame().size()) +
                     "-world model");
  out << (eval(m, o.world, f) ? "true" : "false") << "\n";
  return ok;
}

int cmd_search(const Options& o, std::ostream& out, bool print_model) {
  const Formula f = formula_arg(o.formula);
  const FrameClass cls = class_named(o.cls);
  check_bound(o.max_n);
  const auto report = find_countermodel(f, cls, o.max_n, {o.threads});
  if (!report) {
    out << (print_model ? "no countermodel up to " : "valid up to ") << o.max_n << "\n";
    return o.expect_invalid ? mismatch : ok;
  }
  recheck(*report, f);
  if (print_model) {
    out << witness_json(*report) << "\n";
  } else {
    out << "countermodel at n=" << report->frame_size << ", world " << report->world << "\n";
    out << model_to_json(report->model) << "\n";
  }
  return o.expect_valid ? mismatch : ok;
}

int cmd_translate(const Options& o, std::ostream& out) {
  const Formula f = formula_arg(o.formula);
  Formula t;
  if (o.target == "core")
    t = desugar(f);
  else if (o.target == "box")
    t = to_box_language(f);
  else if (o.target == "strict")
    t = to_strict_language(f);
  else
    throw UsageError("--to must be core, box or strict");
  out << (o.unicode ? print_unicode(t) : print(t)) << "\n";
  return ok;
}

int cmd_prove(const Options& o, std::ostream& out) {
  const auto sys = system_by_name(o.system);
  if (!sys) throw UsageError("unknown system '" + o.system + "' (lewis_s2, lewis_s3, lemmon_s2_0, lemmon_s2, lemmon_s3)");
  Derivation d;
  try {
    d = parse_script(read_file(o.script));
  } catch (const ScriptError& e) {
    throw UsageError(o.script + ": " + e.what());
  }
  const CheckResult r = check(*sys, d);
  if (!r.ok()) {
    out << "rejected at step " << r.step << " (line " << d.steps[r.step - 1].line << "): " << check_error_name(r.error)
        << ": " << r.message << "\n";
    return mismatch;
  }
  out << "ok: " << d.steps.size() << " step(s) in " << system_name(*sys) << "\n";
  if (o.spotcheck == 0) return ok;
  check_bound(o.spotcheck);
  std::optional<FrameClass> cls;
  if (!o.spot_class.empty()) cls = class_named(o.spot_class);
  const auto spot = soundness_spotcheck(*sys, d, o.spotcheck, cls, {o.threads});
  for (const auto& v : spot.steps) {
    out << "step " << v.step << ": ";
    if (v.countermodel) {
      recheck(*v.countermodel, d.steps[v.step - 1].formula);
      out << "countermodel " << witness_json(*v.countermodel) << "\n";
    } else {
      out << "valid up to " << spot.max_n << " on " << spot.cls.name() << "\n";
    }
  }
  return spot.all_valid() ? ok : mismatch;
}

int cmd_suite(const Options& o, std::ostream& out) {
  check_bound(o.max_n);
  const SuiteReport report = run_suite(o.max_n, {o.threads});
  out << suite_table(report);
  if (!o.json_file.empty()) {
    std::ofstream f(o.json_file, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + o.json_file + "'");
    f << suite_to_json(report);
  }
  return report.all_passed() ? ok : mismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kripke semantics, bounded validity and proof checking for super-strict implication"};
  app.name("ssi");
  app.require_subcommand(1);
  Options o;

  auto add_formula = [&](CLI::App* sub) { sub->add_option("-f,--formula", o.formula, "Formula text")->required(); };
  auto add_search = [&](CLI::App* sub) {
    add_formula(sub);
    sub->add_option("-c,--class", o.cls, "Frame class (s2_0, s2, s3, k, kt, s4, s5, ...)");
    sub->add_option("-n,--max-n", o.max_n, "Largest frame size to search");
    sub->add_option("-j,--threads", o.threads, "Worker threads");
    auto* ev = sub->add_flag("--expect-valid", o.expect_valid, "Exit 1 if a countermodel is found");
    sub->add_flag("--expect-invalid", o.expect_invalid, "Exit 1 if no countermodel is found")->excludes(ev);
  };

  auto* parse_cmd = app.add_subcommand("parse", "Parse and pretty-print a formula");
  add_formula(parse_cmd);
  parse_cmd->add_flag("--json", o.json, "Print the AST as JSON");
  parse_cmd->add_flag("--unicode", o.unicode, "Print with logical symbols");
  parse_cmd->add_flag("--metrics", o.metrics, "Also print weight, modal depth and language");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula at a world of a JSON model");
  add_formula(eval_cmd);
  eval_cmd->add_option("-m,--model", o.model_file, "Model JSON file ('-' for stdin)")->required();
  eval_cmd->add_option("-w,--world", o.world, "World index")->required();

  auto* valid_cmd = app.add_subcommand("valid", "Bounded validity over a frame class");
  add_search(valid_cmd);
  auto* cm_cmd = app.add_subcommand("countermodel", "Print the first countermodel as JSON");
  add_search(cm_cmd);

  auto* tr_cmd = app.add_subcommand("translate", "Rewrite into the core, box or strict fragment");
  add_formula(tr_cmd);
  tr_cmd->add_option("-t,--to", o.target, "core | box | strict");
  tr_cmd->add_flag("--unicode", o.unicode, "Print with logical symbols");

  auto* pr_cmd = app.add_subcommand("prove", "Check a proof script");
  pr_cmd->add_option("-s,--system", o.system, "lewis_s2 | lewis_s3 | lemmon_s2_0 | lemmon_s2 | lemmon_s3")->required();
  pr_cmd->add_option("--script", o.script, "Proof script file ('-' for stdin)")->required();
  pr_cmd->add_option("--spotcheck", o.spotcheck, "Also check each step for countermodels up to this size");
  pr_cmd->add_option("--class", o.spot_class, "Frame class for --spotcheck (default: the system's)");
  pr_cmd->add_option("-j,--threads", o.threads, "Worker threads");

  auto* suite_cmd = app.add_subcommand("suite", "Run the built-in catalog");
  suite_cmd->add_option("-n,--max-n", o.max_n, "Largest frame size to search");
  suite_cmd->add_option("--json", o.json_file, "Write the JSON report here");
  suite_cmd->add_option("-j,--threads", o.threads, "Worker threads");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(o, out);
    if (eval_cmd->parsed()) return cmd_eval(o, out);
    if (valid_cmd->parsed()) return cmd_search(o, out, false);
    if (cm_cmd->parsed()) return cmd_search(o, out, true);
    if (tr_cmd->parsed()) return cmd_translate(o, out);
    if (pr_cmd->parsed()) return cmd_prove(o, out);
    if (suite_cmd->parsed()) return cmd_suite(o, out);
  } catch (const UsageError& e) {
    err << "ssi: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "ssi: internal error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace ssi::cli
