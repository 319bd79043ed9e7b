#include "ssi/proof.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <sstream>

#include "ssi/text.hpp"

namespace ssi {

std::string_view system_name(System s) {
  switch (s) {
    case System::lewis_s2: return "lewis_s2";
    case System::lewis_s3: return "lewis_s3";
    case System::lemmon_s2_0: return "lemmon_s2_0";
    case System::lemmon_s2: return "lemmon_s2";
    case System::lemmon_s3: return "lemmon_s3";
  }
  return "?";
}

std::optional<System> system_by_name(std::string_view name) {
  for (System s : {System::lewis_s2, System::lewis_s3, System::lemmon_s2_0, System::lemmon_s2, System::lemmon_s3})
    if (system_name(s) == name) return s;
  return std::nullopt;
}

FrameClass system_class(System s) {
  switch (s) {
    case System::lemmon_s2_0: return FrameClass::s2_0();
    case System::lewis_s2:
    case System::lemmon_s2: return FrameClass::s2();
    case System::lewis_s3:
    case System::lemmon_s3: return FrameClass::s3();
  }
  return {};
}

namespace {

bool is_lewis(System s) { return s == System::lewis_s2 || s == System::lewis_s3; }

struct SchemaText {
  std::string_view id;
  std::string_view text;
};

constexpr SchemaText lewis_schemata[] = {
    {"A1", "(p & q) => (q & p)"},
    {"A2", "(p & q) => p"},
    {"A3", "p => (p & p)"},
    {"A4", "((p & q) & r) => (p & (q & r))"},
    {"A5", "((p => q) & (q => r)) => (p => r)"},
    {"A6", "(p & (p => q)) => q"},
    {"A7", "dia (p & q) => dia p"},
    {"S3", "(p => q) => (~dia q => ~dia p)"},
};

constexpr SchemaText lemmon_schemata[] = {
    {"K", "box (A -> B) -> (box A -> box B)"},
    {"T", "box A -> A"},
    {"K3", "box (A -> B) -> box (box A -> box B)"},
};

bool system_has_axiom(System s, std::string_view id) {
  switch (s) {
    case System::lewis_s2: return id.size() == 2 && id[0] == 'A' && id[1] >= '1' && id[1] <= '7';
    case System::lewis_s3: return id == "S3" || (id.size() == 2 && id[0] == 'A' && id[1] >= '1' && id[1] <= '6');
    case System::lemmon_s2_0: return id == "PC" || id == "K";
    case System::lemmon_s2: return id == "PC" || id == "K" || id == "T";
    case System::lemmon_s3: return id == "PC" || id == "K3" || id == "T";
  }
  return false;
}

bool in_system_language(System s, const Formula& f) {
  switch (f.op()) {
    case Op::ssi:
    case Op::sssi: return false;
    case Op::strict:
      if (!is_lewis(s)) return false;
      break;
    default: break;
  }
  switch (arity(f.op())) {
    case 0: return true;
    case 1: return in_system_language(s, f.lhs());
    default: return in_system_language(s, f.lhs()) && in_system_language(s, f.rhs());
  }
}

bool match(const Formula& schema, const Formula& f, Substitution& sigma) {
  if (schema.op() == Op::var) {
    auto [it, inserted] = sigma.emplace(schema.name(), f);
    return inserted || it->second == f;
  }
  if (schema.op() != f.op()) return false;
  switch (arity(schema.op())) {
    case 0: return true;
    case 1: return match(schema.lhs(), f.lhs(), sigma);
    default: return match(schema.lhs(), f.lhs(), sigma) && match(schema.rhs(), f.rhs(), sigma);
  }
}

void collect_atoms(const Formula& f, std::vector<Formula>& atoms) {
  if (f.op() == Op::var || is_modal(f.op())) {
    if (std::find(atoms.begin(), atoms.end(), f) == atoms.end()) atoms.push_back(f);
    return;
  }
  if (f.op() == Op::bot) return;
  collect_atoms(f.lhs(), atoms);
  collect_atoms(f.rhs(), atoms);
}

bool truth(const Formula& f, const std::vector<Formula>& atoms, std::uint64_t row) {
  switch (f.op()) {
    case Op::bot: return false;
    case Op::conj: return truth(f.lhs(), atoms, row) && truth(f.rhs(), atoms, row);
    case Op::disj: return truth(f.lhs(), atoms, row) || truth(f.rhs(), atoms, row);
    case Op::imp: return !truth(f.lhs(), atoms, row) || truth(f.rhs(), atoms, row);
    default: {
      const auto i = static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), f) - atoms.begin());
      return (row >> i) & 1U;
    }
  }
}

std::string describe(const Formula& f) { return "'" + print(f) + "'"; }

class Checker {
 public:
  Checker(System sys, const Derivation& d) : sys_(sys), d_(d) {}

  CheckResult run() {
    for (std::size_t i = 0; i < d_.steps.size(); ++i) {
      step_ = i + 1;
      const Step& st = d_.steps[i];
      if (!in_system_language(sys_, st.formula)) {
        fail(CheckError::language, describe(st.formula) + " uses a connective outside " +
                                       std::string(system_name(sys_)));
      } else {
        std::visit([&](const auto& j) { check_step(st, j); }, st.why);
      }
      if (!result_.ok()) return result_;
    }
    return result_;
  }

 private:
  void fail(CheckError e, std::string msg) {
    if (!result_.ok()) return;
    result_ = {e, step_, std::move(msg)};
  }

  void check_step(const Step& st, const AxiomInstance& ax) {
    if (!system_has_axiom(sys_, ax.axiom)) {
      fail(CheckError::unknown_axiom, "axiom " + ax.axiom + " is not part of " + std::string(system_name(sys_)));
      return;
    }
    if (ax.axiom == "PC") {
      if (ax.substitution && !ax.substitution->empty())
        fail(CheckError::schema_mismatch, "PC takes no substitution");
      else if (!taut(st.formula))
        fail(CheckError::schema_mismatch, describe(st.formula) + " is not a classical tautology");
      return;
    }
    const Formula schema = *axiom_schema(sys_, ax.axiom);
    if (ax.substitution) {
      const Formula inst = substitute(schema, *ax.substitution);
      if (!(inst == st.formula))
        fail(CheckError::schema_mismatch, "substitution yields " + describe(inst) + ", not " + describe(st.formula));
      return;
    }
    Substitution sigma;
    if (!match(schema, st.formula, sigma))
      fail(CheckError::schema_mismatch, describe(st.formula) + " is not an instance of " + ax.axiom);
  }

  const Formula* premise(const RuleApp& app, std::size_t i) {
    if (i >= app.premises.size()) {
      fail(CheckError::bad_premise, std::string(rule_name(app.rule)) + " needs more premises");
      return nullptr;
    }
    const std::size_t k = app.premises[i];
    if (k < 1 || k >= step_) {
      fail(CheckError::bad_premise, "premise " + std::to_string(k) + " is not an earlier step");
      return nullptr;
    }
    return &d_.steps[k - 1].formula;
  }

  bool arity_ok(const RuleApp& app, std::size_t n) {
    if (app.premises.size() == n) return true;
    fail(CheckError::bad_premise, std::string(rule_name(app.rule)) + " takes " + std::to_string(n) + " premise(s)");
    return false;
  }

  void conclude(const Step& st, const Formula& expected) {
    if (!(st.formula == expected))
      fail(CheckError::wrong_conclusion, "rule yields " + describe(expected) + ", not " + describe(st.formula));
  }

  void check_step(const Step& st, const RuleApp& app) {
    if (!system_has_rule(sys_, app.rule)) {
      fail(CheckError::rule_not_in_system,
           std::string(rule_name(app.rule)) + " is not a rule of " + std::string(system_name(sys_)));
      return;
    }
    const std::size_t want = app.rule == Rule::adjunction || app.rule == Rule::strict_detachment ||
                                     app.rule == Rule::modus_ponens || app.rule == Rule::strict_equivalents
                                 ? 2
                                 : 1;
    if (!arity_ok(app, want)) return;
    const Formula* a = premise(app, 0);
    const Formula* b = want == 2 ? premise(app, 1) : nullptr;
    if (!a || (want == 2 && !b)) return;

    switch (app.rule) {
      case Rule::uniform_substitution:
        if (app.variable.empty()) {
          fail(CheckError::bad_premise, "us needs a variable");
          return;
        }
        conclude(st, substitute(*a, app.variable, app.replacement));
        return;
      case Rule::adjunction:
        conclude(st, Formula::conj(*a, *b));
        return;
      case Rule::strict_detachment:
      case Rule::modus_ponens: {
        const Op op = app.rule == Rule::modus_ponens ? Op::imp : Op::strict;
        if (a->op() != op || !(a->lhs() == *b)) {
          fail(CheckError::bad_premise, describe(*a) + " does not have " + describe(*b) + " as antecedent");
          return;
        }
        conclude(st, a->rhs());
        return;
      }
      case Rule::becker: {
        if (a->op() != Op::box || a->lhs().op() != Op::imp) {
          fail(CheckError::bad_premise, describe(*a) + " is not of the form box (A -> B)");
          return;
        }
        const Formula& inner = a->lhs();
        conclude(st, Formula::box(Formula::imp(Formula::box(inner.lhs()), Formula::box(inner.rhs()))));
        return;
      }
      case Rule::restricted_necessitation:
        if (!taut(*a)) {
          fail(CheckError::side_condition, describe(*a) + " is not a theorem of classical logic");
          return;
        }
        conclude(st, Formula::box(*a));
        return;
      case Rule::strict_equivalents:
        check_equivalents(st, app, *a, *b);
        return;
    }
  }

  void check_equivalents(const Step& st, const RuleApp& app, const Formula& target, const Formula& eq) {
    const bool shape = eq.op() == Op::conj && eq.lhs().op() == Op::strict && eq.rhs().op() == Op::strict &&
                       eq.lhs().lhs() == eq.rhs().rhs() && eq.lhs().rhs() == eq.rhs().lhs();
    if (!shape) {
      fail(CheckError::bad_premise, describe(eq) + " is not of the form (B => C) & (C => B)");
      return;
    }
    const Formula& b = eq.lhs().lhs();
    const Formula& c = eq.lhs().rhs();
    if (app.paths.empty()) {
      conclude(st, target);
      return;
    }
    try {
      const Formula& at = subformula_at(target, *app.paths.begin());
      // Either side may be the one being replaced.
      const Formula& with = at == c ? b : c;
      if (!(at == b) && !(at == c)) {
        fail(CheckError::bad_paths, "occurrence " + describe(at) + " is neither side of the equivalence");
        return;
      }
      conclude(st, replace_at(target, app.paths, with));
    } catch (const PathError& e) {
      fail(CheckError::bad_paths, e.what());
    }
  }

  System sys_;
  const Derivation& d_;
  std::size_t step_ = 0;
  CheckResult result_;
};

}  // namespace

std::optional<Formula> axiom_schema(System s, std::string_view id) {
  if (!system_has_axiom(s, id)) return std::nullopt;
  for (const auto& sc : is_lewis(s) ? std::span<const SchemaText>(lewis_schemata)
                                    : std::span<const SchemaText>(lemmon_schemata))
    if (sc.id == id) return parse(sc.text);
  return std::nullopt;
}

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::uniform_substitution: return "us";
    case Rule::strict_equivalents: return "se";
    case Rule::adjunction: return "adj";
    case Rule::strict_detachment: return "sd";
    case Rule::modus_ponens: return "mp";
    case Rule::becker: return "br";
    case Rule::restricted_necessitation: return "nrest";
  }
  return "?";
}

std::optional<Rule> rule_by_name(std::string_view name) {
  for (Rule r : {Rule::uniform_substitution, Rule::strict_equivalents, Rule::adjunction, Rule::strict_detachment,
                 Rule::modus_ponens, Rule::becker, Rule::restricted_necessitation})
    if (rule_name(r) == name) return r;
  return std::nullopt;
}

bool system_has_rule(System s, Rule r) {
  switch (r) {
    case Rule::uniform_substitution:
    case Rule::strict_equivalents:
    case Rule::adjunction:
    case Rule::strict_detachment: return is_lewis(s);
    case Rule::modus_ponens:
    case Rule::restricted_necessitation: return !is_lewis(s);
    case Rule::becker: return s == System::lemmon_s2_0 || s == System::lemmon_s2;
  }
  return false;
}

std::string_view check_error_name(CheckError e) {
  switch (e) {
    case CheckError::none: return "ok";
    case CheckError::language: return "language";
    case CheckError::unknown_axiom: return "unknown_axiom";
    case CheckError::schema_mismatch: return "schema_mismatch";
    case CheckError::bad_premise: return "bad_premise";
    case CheckError::wrong_conclusion: return "wrong_conclusion";
    case CheckError::side_condition: return "side_condition";
    case CheckError::rule_not_in_system: return "rule_not_in_system";
    case CheckError::bad_paths: return "bad_paths";
  }
  return "?";
}

CheckResult check(System system, const Derivation& d) { return Checker(system, d).run(); }

bool taut(const Formula& f) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > 30) throw std::length_error("too many atoms for a truth table");
  const std::uint64_t rows = std::uint64_t{1} << atoms.size();
  for (std::uint64_t row = 0; row < rows; ++row)
    if (!truth(f, atoms, row)) return false;
  return true;
}

ScriptError::ScriptError(const std::string& what, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t number(std::string_view w, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc{} || ptr != w.data() + w.size()) throw ScriptError("expected a step number, got '" + std::string(w) + "'", line);
  return v;
}

Formula formula_at(std::string_view text, std::size_t line) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ScriptError("in '" + std::string(trim(text)) + "': column " + std::to_string(e.column()) + ": " + e.detail(),
                      line);
  }
}

/// "p := B" -> (p, B)
std::pair<std::string, Formula> binding(std::string_view text, std::size_t line) {
  const auto pos = text.find(":=");
  if (pos == std::string_view::npos) throw ScriptError("expected 'variable := formula'", line);
  const auto var = trim(text.substr(0, pos));
  if (var.empty() || words(var).size() != 1) throw ScriptError("bad variable in substitution", line);
  return {std::string(var), formula_at(text.substr(pos + 2), line)};
}

Justification justification(std::string_view text, std::size_t line) {
  text = trim(text);
  const auto head_end = std::min(text.find_first_of(" \t"), text.size());
  const auto head = text.substr(0, head_end);
  const auto rest = trim(text.substr(head_end));

  if (head == "axiom") {
    const auto id_end = std::min(rest.find_first_of(" \t["), rest.size());
    AxiomInstance ax{std::string(rest.substr(0, id_end)), std::nullopt};
    if (ax.axiom.empty()) throw ScriptError("axiom needs a name", line);
    auto tail = trim(rest.substr(id_end));
    if (!tail.empty()) {
      if (tail.front() != '[' || tail.back() != ']') throw ScriptError("substitution must be written [p := B, ...]", line);
      tail = trim(tail.substr(1, tail.size() - 2));
      Substitution sigma;
      while (!tail.empty()) {
        const auto comma = std::min(tail.find(','), tail.size());
        auto [var, f] = binding(tail.substr(0, comma), line);
        if (!sigma.emplace(var, f).second) throw ScriptError("variable '" + var + "' substituted twice", line);
        tail = comma < tail.size() ? trim(tail.substr(comma + 1)) : std::string_view{};
      }
      ax.substitution = std::move(sigma);
    }
    return ax;
  }

  const auto rule = rule_by_name(head);
  if (!rule) throw ScriptError("unknown rule '" + std::string(head) + "'", line);
  RuleApp app{*rule, {}, {}, {}, {}};
  if (*rule == Rule::uniform_substitution) {
    const auto first_end = std::min(rest.find_first_of(" \t"), rest.size());
    app.premises.push_back(number(rest.substr(0, first_end), line));
    auto [var, f] = binding(rest.substr(first_end), line);
    app.variable = std::move(var);
    app.replacement = std::move(f);
    return app;
  }
  const auto args = words(rest);
  const std::size_t numbered = *rule == Rule::strict_equivalents ? 2 : args.size();
  if (args.size() < numbered) throw ScriptError("se needs a target step and an equivalence step", line);
  for (std::size_t i = 0; i < numbered; ++i) app.premises.push_back(number(args[i], line));
  for (std::size_t i = numbered; i < args.size(); ++i) {
    try {
      app.paths.insert(parse_path(std::string(args[i])));
    } catch (const PathError& e) {
      throw ScriptError(e.what(), line);
    }
  }
  return app;
}

}  // namespace

Derivation parse_script(std::string_view text) {
  Derivation d;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = std::min(text.find('\n', start), text.size());
    const auto raw = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto dot = line.find('.');
    if (dot == std::string_view::npos) throw ScriptError("expected 'k. formula ; justification'", line_no);
    const std::size_t k = number(trim(line.substr(0, dot)), line_no);
    if (k != d.steps.size() + 1)
      throw ScriptError("step numbered " + std::to_string(k) + ", expected " + std::to_string(d.steps.size() + 1),
                        line_no);
    const auto body = line.substr(dot + 1);
    const auto semi = body.find(';');
    if (semi == std::string_view::npos) throw ScriptError("missing ';' before the justification", line_no);
    d.steps.push_back({formula_at(body.substr(0, semi), line_no), justification(body.substr(semi + 1), line_no), line_no});
  }
  return d;
}

bool SpotcheckReport::all_valid() const {
  return std::all_of(steps.begin(), steps.end(), [](const StepVerdict& v) { return !v.countermodel; });
}

SpotcheckReport soundness_spotcheck(System system, const Derivation& d, std::size_t max_n,
                                    std::optional<FrameClass> cls, const SearchOptions& opts) {
  SpotcheckReport out{cls.value_or(system_class(system)), max_n, {}};
  for (std::size_t i = 0; i < d.steps.size(); ++i)
    out.steps.push_back({i + 1, find_countermodel(d.steps[i].formula, out.cls, max_n, opts)});
  return out;
}

}  // namespace ssi
