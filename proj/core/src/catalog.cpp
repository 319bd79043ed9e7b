#include "ssi/catalog.hpp"

#include <iomanip>
#include <sstream>

#include "json_detail.hpp"
#include "ssi/text.hpp"

namespace ssi {

std::string_view expected_name(Expected e) {
  switch (e) {
    case Expected::valid: return "valid";
    case Expected::invalid: return "invalid";
    case Expected::unknown: return "unknown";
  }
  return "?";
}

namespace {

constexpr std::string_view lewis_axioms[] = {
    "(p & q) |> (q & p)",
    "(p & q) |> p",
    "p |> (p & p)",
    "((p & q) & r) |> (p & (q & r))",
    "((p |> q) & (q |> r)) |> (p |> r)",
    "(p & (p |> q)) |> q",
    "dia (p & q) |> dia p",
};
constexpr std::string_view lewis_s3_axiom = "(p |> q) |> (~dia q |> ~dia p)";

/// dia A -> (A |> B) for a formula A |> B.
Formula guarded(const Formula& f) { return Formula::imp(Formula::dia(f.lhs()), f); }

/// The same formula with every |> read as =>.
Formula as_strict(const Formula& f) {
  switch (arity(f.op())) {
    case 0: return f;
    case 1: return Formula::make(f.op(), as_strict(f.lhs()));
    default:
      return Formula::make(f.op() == Op::ssi ? Op::strict : f.op(), as_strict(f.lhs()), as_strict(f.rhs()));
  }
}

std::vector<NamedFormula> build_catalog() {
  std::vector<NamedFormula> out;
  auto add = [&](std::string name, std::string ref, const Formula& f, Expected e, FrameClass c) {
    out.push_back({std::move(name), std::move(ref), f, e, c});
  };
  auto addp = [&](std::string name, std::string ref, std::string_view text, Expected e, FrameClass c) {
    add(std::move(name), std::move(ref), parse(text), e, c);
  };
  const auto valid = Expected::valid;
  const auto invalid = Expected::invalid;
  const auto unknown = Expected::unknown;

  // Normal frames.
  const FrameClass k = FrameClass::k();
  addp("k.pmi_1", "paradox of material implication", "~p |> (p |> q)", invalid, k);
  addp("k.pmi_2", "paradox of material implication", "q |> (p |> q)", invalid, k);
  addp("k.psi_1", "paradox of strict implication", "bot |> q", invalid, k);
  addp("k.psi_2", "paradox of strict implication", "p |> top", invalid, k);
  addp("k.not_psi_1", "negated first paradox of strict implication", "~(bot |> q)", valid, k);
  addp("k.at_1", "Aristotle's thesis", "~(p |> ~p)", valid, k);
  addp("k.at_2", "Aristotle's thesis", "~(~p |> p)", valid, k);
  addp("k.wbt_1", "weak Boethius' thesis", "(p |> q) -> ~(p |> ~q)", valid, k);
  addp("k.wbt_2", "weak Boethius' thesis", "(p |> ~q) -> ~(p |> q)", valid, k);
  addp("k.strong_bt", "strong Boethius' thesis", "(p |> q) |> ~(p |> ~q)", invalid, k);
  addp("k.reflexivity", "reflexivity of super-strict implication", "p |> p", invalid, k);
  addp("k.contraposition", "contraposition", "(p |> q) -> (~q |> ~p)", invalid, k);

  // Non-normal frames: paradoxes, reflexivity and contraposition fail.
  for (const auto& [cname, cls] : {std::pair{"s2", FrameClass::s2()}, std::pair{"s3", FrameClass::s3()}}) {
    const std::string pre = std::string(cname) + ".";
    addp(pre + "pmi_1", "paradox of material implication", "~p |> (p |> q)", invalid, cls);
    addp(pre + "pmi_2", "paradox of material implication", "q |> (p |> q)", invalid, cls);
    addp(pre + "psi_1", "paradox of strict implication", "bot |> q", invalid, cls);
    addp(pre + "psi_2", "paradox of strict implication", "p |> top", invalid, cls);
    addp(pre + "reflexivity", "reflexivity of super-strict implication", "p |> p", invalid, cls);
    addp(pre + "contraposition", "contraposition", "(p |> q) -> (~q |> ~p)", invalid, cls);
  }

  // Connexive principles on all non-normal frames.
  const FrameClass s2_0 = FrameClass::s2_0();
  addp("s2_0.not_psi_1", "negated first paradox of strict implication", "~(bot |> q)", valid, s2_0);
  addp("s2_0.at_1", "Aristotle's thesis", "~(p |> ~p)", valid, s2_0);
  addp("s2_0.at_2", "Aristotle's thesis", "~(~p |> p)", valid, s2_0);
  addp("s2_0.wbt_1", "weak Boethius' thesis", "(p |> q) -> ~(p |> ~q)", valid, s2_0);
  addp("s2_0.wbt_2", "weak Boethius' thesis", "(p |> ~q) -> ~(p |> q)", valid, s2_0);
  addp("s2_0.strong_bt", "strong Boethius' thesis", "(p |> q) |> ~(p |> ~q)", invalid, s2_0);
  addp("s2.strong_bt", "strong Boethius' thesis (open for stronger classes)", "(p |> q) |> ~(p |> ~q)", unknown,
       FrameClass::s2());
  addp("s3.strong_bt", "strong Boethius' thesis (open for stronger classes)", "(p |> q) |> ~(p |> ~q)", unknown,
       FrameClass::s3());

  // Lewis' axioms read with |>, bare and guarded by the antecedent's possibility.
  const FrameClass s2 = FrameClass::s2();
  const FrameClass s3 = FrameClass::s3();
  for (std::size_t i = 0; i < std::size(lewis_axioms); ++i) {
    const Formula ax = parse(lewis_axioms[i]);
    const std::string num = std::to_string(i + 1);
    add("s2.lewis_ax" + num, "Lewis axiom with |> for =>", ax, invalid, s2);
    add("s2.guarded_ax" + num, "possibility-guarded Lewis axiom", guarded(ax), valid, s2);
  }
  const Formula s3ax = parse(lewis_s3_axiom);
  add("s3.lewis_s3_ax", "Lewis S3 axiom with |> for =>", s3ax, invalid, s3);
  // A single reflexive world with p and q true falsifies the guarded form.
  add("s3.guarded_s3_ax", "possibility-guarded Lewis S3 axiom", guarded(s3ax), invalid, s3);
  add("s3.guarded_s3_ax_nested", "possibility-guarded Lewis S3 axiom, inner |> guarded too",
      guarded(Formula::ssi(s3ax.lhs(), guarded(s3ax.rhs()))), valid, s3);

  addp("s2_0.transitivity", "transitivity of super-strict implication", "((p |> q) & (q |> r)) -> (p |> r)", valid,
       s2_0);
  addp("s2.dia_reflexivity", "reflexivity under possible antecedent", "dia p -> (p |> p)", valid, s2);
  addp("s2.neg_dia_reflexivity", "reflexivity under impossible antecedent", "~dia p -> (p |> p)", invalid, s2);
  addp("s3.nested_transitivity", "nested guarded transitivity",
       "dia (p |> q) -> ((p |> q) |> (dia (q |> r) -> ((q |> r) |> (dia p -> (p |> r)))))", valid, s3);
  addp("s2.nested_transitivity", "nested guarded transitivity",
       "dia (p |> q) -> ((p |> q) |> (dia (q |> r) -> ((q |> r) |> (dia p -> (p |> r)))))", invalid, s2);

  // Necessitation is restricted.
  addp("s2_0.box_top", "necessitation of a tautology", "box top", valid, s2_0);
  addp("s2_0.box_box_top", "iterated necessitation", "box box top", invalid, s2_0);

  // Strict-implication axiom systems under their own primitive clauses.
  for (std::size_t i = 0; i < std::size(lewis_axioms); ++i)
    add("s2.strict_ax" + std::to_string(i + 1), "Lewis S2 axiom", as_strict(parse(lewis_axioms[i])), valid, s2);
  add("s3.strict_s3_ax", "Lewis S3 axiom", as_strict(s3ax), valid, s3);
  addp("s2_0.lemmon_k", "Lemmon axiom K", "box (p -> q) -> (box p -> box q)", valid, s2_0);
  addp("s2.lemmon_t", "Lemmon axiom T", "box p -> p", valid, s2);
  addp("s2_0.lemmon_t", "Lemmon axiom T off reflexive frames", "box p -> p", invalid, s2_0);
  addp("s3.lemmon_k3", "Lemmon S3 axiom", "box (p -> q) -> box (box p -> box q)", valid, s3);
  return out;
}

}  // namespace

const std::vector<NamedFormula>& catalog() {
  static const std::vector<NamedFormula> entries = build_catalog();
  return entries;
}

Frame two_point_frame() {
  const std::pair<World, World> edges[] = {{0, 1}, {1, 1}};
  const World normals[] = {0};
  return Frame::from_edges(2, edges, normals);
}

const NamedFormula* find_in_catalog(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

bool SuiteEntry::passed() const {
  switch (item->expected) {
    case Expected::valid: return valid_up_to_bound();
    case Expected::invalid: return !valid_up_to_bound();
    case Expected::unknown: return true;
  }
  return false;
}

bool SuiteReport::all_passed() const {
  for (const auto& e : entries)
    if (!e.passed()) return false;
  return true;
}

SuiteReport run_suite(std::size_t max_n, const SearchOptions& opts) {
  SuiteReport report{max_n, {}};
  for (const auto& item : catalog())
    report.entries.push_back({&item, max_n, find_countermodel(item.formula, item.cls, max_n, opts)});
  return report;
}

namespace {

std::string_view verdict(const SuiteEntry& e) { return e.valid_up_to_bound() ? "valid_up_to_bound" : "countermodel"; }

std::string_view status(const SuiteEntry& e) {
  if (e.item->expected == Expected::unknown) return "info";
  return e.passed() ? "pass" : "fail";
}

}  // namespace

std::string suite_to_json(const SuiteReport& report) {
  using detail::ordered_json;
  ordered_json root;
  root["max_n"] = report.max_n;
  std::size_t failures = 0;
  auto entries = ordered_json::array();
  for (const auto& e : report.entries) {
    if (!e.passed()) ++failures;
    ordered_json j;
    j["name"] = e.item->name;
    j["ref"] = e.item->ref;
    j["formula"] = print(e.item->formula);
    j["class"] = e.item->cls.name();
    j["bound"] = e.bound;
    j["expected"] = expected_name(e.item->expected);
    j["verdict"] = verdict(e);
    j["status"] = status(e);
    if (e.countermodel) {
      ordered_json w;
      w["frame_size"] = e.countermodel->frame_size;
      w["world"] = e.countermodel->world;
      w["model"] = detail::model_json(e.countermodel->model);
      j["witness"] = std::move(w);
    } else {
      j["witness"] = nullptr;
    }
    entries.push_back(std::move(j));
  }
  root["entries"] = std::move(entries);
  root["failures"] = failures;
  return root.dump(2) + "\n";
}

std::string suite_table(const SuiteReport& report) {
  std::ostringstream out;
  std::size_t width = 4;
  for (const auto& e : report.entries) width = std::max(width, e.item->name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "name" << "  " << std::setw(6) << "class" << "  "
      << std::setw(8) << "expected" << "  " << std::setw(18) << "verdict" << "  status  formula\n";
  std::size_t failures = 0;
  for (const auto& e : report.entries) {
    if (!e.passed()) ++failures;
    std::string v(verdict(e));
    if (e.countermodel) v += " n=" + std::to_string(e.countermodel->frame_size);
    out << std::setw(static_cast<int>(width)) << e.item->name << "  " << std::setw(6) << e.item->cls.name() << "  "
        << std::setw(8) << expected_name(e.item->expected) << "  " << std::setw(18) << v << "  " << std::setw(6)
        << status(e) << "  " << print(e.item->formula) << "\n";
  }
  out << report.entries.size() << " entries, " << failures << " failed, bound n <= " << report.max_n << "\n";
  return out.str();
}

}  // namespace ssi
