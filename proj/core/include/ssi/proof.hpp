#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ssi/formula.hpp"
#include "ssi/search.hpp"
#include "ssi/semantics.hpp"
#include "ssi/syntax.hpp"

namespace ssi {

/// Axiom systems for the non-normal strict-implication logics.
///
/// Lewis systems work over =>, box and dia with axioms A1..A7 (S3 swaps A7
/// for the axiom called "S3"). Lemmon systems extend classical logic over
/// box and dia: axioms PC (any tautology), K, T; S3 uses K3 instead of K and
/// has no Becker rule; S2_0 has no T.
enum class System { lewis_s2, lewis_s3, lemmon_s2_0, lemmon_s2, lemmon_s3 };

std::string_view system_name(System s);
std::optional<System> system_by_name(std::string_view name);

/// Frame class whose validities the system axiomatizes.
FrameClass system_class(System s);

/// Axiom schema by id for the given system, or nullopt if the system does
/// not have it. Lewis schemata range over p, q, r; Lemmon schemata over A, B.
/// PC has no schema.
std::optional<Formula> axiom_schema(System s, std::string_view id);

enum class Rule {
  uniform_substitution,  ///< us: A  /  A[B/p]
  strict_equivalents,    ///< se: A, (B => C) & (C => B)  /  A with chosen C occurrences replaced by B
  adjunction,            ///< adj: A, B  /  A & B
  strict_detachment,     ///< sd: A => B, A  /  B
  modus_ponens,          ///< mp: A -> B, A  /  B
  becker,                ///< br: box (A -> B)  /  box (box A -> box B)
  restricted_necessitation,  ///< nrest: A  /  box A, A a tautology
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_by_name(std::string_view name);
bool system_has_rule(System s, Rule r);

using Substitution = std::map<std::string, Formula>;

struct AxiomInstance {
  std::string axiom;
  /// Instantiation of the schema; inferred by matching when absent.
  std::optional<Substitution> substitution;
};

struct RuleApp {
  Rule rule;
  /// 1-based step numbers, in the order the rule lists its premises.
  std::vector<std::size_t> premises;
  /// us: the substituted variable and its replacement.
  std::string variable;
  Formula replacement;
  /// se: occurrences to replace in the first premise.
  std::set<Path> paths;
};

using Justification = std::variant<AxiomInstance, RuleApp>;

struct Step {
  Formula formula;
  Justification why;
  /// Source line for scripts, 0 otherwise.
  std::size_t line = 0;
};

struct Derivation {
  std::vector<Step> steps;
};

enum class CheckError {
  none,
  language,          ///< connective outside the system's language
  unknown_axiom,
  schema_mismatch,
  bad_premise,       ///< premise missing, not earlier, or of the wrong shape
  wrong_conclusion,  ///< rule applied correctly but the step states another formula
  side_condition,    ///< restricted necessitation of a non-tautology
  rule_not_in_system,
  bad_paths,
};

std::string_view check_error_name(CheckError e);

struct CheckResult {
  CheckError error = CheckError::none;
  /// 1-based offending step; 0 when ok.
  std::size_t step = 0;
  std::string message;

  bool ok() const { return error == CheckError::none; }
  explicit operator bool() const { return ok(); }
};

/// Validates every step in order and reports the earliest failure.
CheckResult check(System system, const Derivation& d);

/// Classical tautology test with maximal modal subformulas as atoms.
bool taut(const Formula& f);

/// Script syntax error with its 1-based line number.
class ScriptError : public std::runtime_error {
 public:
  ScriptError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Proof scripts
//
//   # comment
//   1. (p & q) => p ; axiom A2
//   2. (q & p) => q ; axiom A2 [p := q, q := p]
//   3. top ; axiom PC
//   4. box top ; nrest 3
//   5. A ; us 1 p := q | r
//   6. A ; se 1 2 0.1 1      (target step, equivalence step, paths)
//   7. A & B ; adj 1 2
//
// Steps are numbered 1, 2, ... in order.

Derivation parse_script(std::string_view text);

struct StepVerdict {
  std::size_t step;
  std::optional<CountermodelReport> countermodel;
};

struct SpotcheckReport {
  FrameClass cls;
  std::size_t max_n;
  std::vector<StepVerdict> steps;

  bool all_valid() const;
};

/// Bounded validity of every step's formula under the primitive clauses,
/// on system_class(system) or `cls` when given.
SpotcheckReport soundness_spotcheck(System system, const Derivation& d, std::size_t max_n,
                                    std::optional<FrameClass> cls = std::nullopt, const SearchOptions& opts = {});

}  // namespace ssi
