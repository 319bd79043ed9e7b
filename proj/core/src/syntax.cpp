#include "ssi/syntax.hpp"

#include <algorithm>
#include <charconv>

#include "ssi/text.hpp"

namespace ssi {

bool in_language(const Formula& f, Language lang) {
  bool ok = true;
  switch (f.op()) {
    case Op::ssi: ok = lang == Language::core || lang == Language::full; break;
    case Op::strict: ok = lang == Language::strict || lang == Language::full; break;
    case Op::box:
    case Op::dia: ok = lang == Language::box || lang == Language::full; break;
    case Op::sssi: ok = lang == Language::full; break;
    default: break;
  }
  if (!ok) return false;
  switch (arity(f.op())) {
    case 0: return true;
    case 1: return in_language(f.lhs(), lang);
    default: return in_language(f.lhs(), lang) && in_language(f.rhs(), lang);
  }
}

std::size_t weight(const Formula& f) {
  switch (arity(f.op())) {
    case 0: return 0;
    case 1: return weight(f.lhs());
    default: return 1 + weight(f.lhs()) + weight(f.rhs());
  }
}

std::size_t modal_depth(const Formula& f) {
  std::size_t inner = 0;
  switch (arity(f.op())) {
    case 0: return 0;
    case 1: inner = modal_depth(f.lhs()); break;
    default: inner = std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
  }
  return inner + (is_modal(f.op()) ? 1 : 0);
}

Path parse_path(const std::string& text) {
  Path out;
  if (text == ".") return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto dot = std::min(text.find('.', start), text.size());
    unsigned idx = 0;
    const char* b = text.data() + start;
    const char* e = text.data() + dot;
    auto [ptr, ec] = std::from_chars(b, e, idx);
    if (b == e || ec != std::errc{} || ptr != e || idx > 1)
      throw PathError("bad path '" + text + "': components must be 0 or 1");
    out.push_back(idx);
    start = dot + 1;
  }
  return out;
}

std::string format_path(const Path& path) {
  if (path.empty()) return ".";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

const Formula& subformula_at(const Formula& f, const Path& path) {
  const Formula* cur = &f;
  for (unsigned idx : path) {
    if (static_cast<int>(idx) >= arity(cur->op()))
      throw PathError("path " + format_path(path) + " leaves the formula at '" + print(*cur) + "'");
    cur = &cur->child(idx);
  }
  return *cur;
}

namespace {

void collect_occurrences(const Formula& f, const Formula& target, Path& cur, std::vector<Path>& out) {
  if (f == target) out.push_back(cur);
  for (int i = 0; i < arity(f.op()); ++i) {
    cur.push_back(static_cast<unsigned>(i));
    collect_occurrences(f.child(static_cast<std::size_t>(i)), target, cur, out);
    cur.pop_back();
  }
}

Formula replace_one(const Formula& f, const Path& path, std::size_t depth, const Formula& b) {
  if (depth == path.size()) return b;
  if (arity(f.op()) == 1) return Formula::make(f.op(), replace_one(f.lhs(), path, depth + 1, b));
  if (path[depth] == 0) return Formula::make(f.op(), replace_one(f.lhs(), path, depth + 1, b), f.rhs());
  return Formula::make(f.op(), f.lhs(), replace_one(f.rhs(), path, depth + 1, b));
}

template <typename Leaf>
Formula map_leaves(const Formula& f, Leaf&& leaf) {
  switch (arity(f.op())) {
    case 0: return leaf(f);
    case 1: return Formula::make(f.op(), map_leaves(f.lhs(), leaf));
    default: return Formula::make(f.op(), map_leaves(f.lhs(), leaf), map_leaves(f.rhs(), leaf));
  }
}

}  // namespace

std::vector<Path> occurrences(const Formula& f, const Formula& target) {
  std::vector<Path> out;
  Path cur;
  collect_occurrences(f, target, cur, out);
  return out;
}

Formula substitute(const Formula& f, const std::string& p, const Formula& b) {
  return map_leaves(f, [&](const Formula& leaf) {
    return leaf.op() == Op::var && leaf.name() == p ? b : leaf;
  });
}

Formula substitute(const Formula& f, const std::map<std::string, Formula>& sigma) {
  return map_leaves(f, [&](const Formula& leaf) {
    if (leaf.op() != Op::var) return leaf;
    auto it = sigma.find(leaf.name());
    return it == sigma.end() ? leaf : it->second;
  });
}

Formula replace_at(const Formula& f, const std::set<Path>& positions, const Formula& b) {
  const Formula* common = nullptr;
  for (const Path& p : positions) {
    const Formula& sub = subformula_at(f, p);
    if (common && !(*common == sub))
      throw PathError("occurrences differ: '" + print(*common) + "' vs '" + print(sub) + "'");
    common = &sub;
  }
  Formula out = f;
  for (const Path& p : positions) out = replace_one(out, p, 0, b);
  return out;
}

Formula desugar(const Formula& f) {
  switch (f.op()) {
    case Op::var:
    case Op::bot:
      return f;
    case Op::box: {
      Formula a = desugar(f.lhs());
      return Formula::neg(Formula::ssi(Formula::neg(std::move(a)), Formula::top()));
    }
    case Op::dia:
      return Formula::ssi(desugar(f.lhs()), Formula::top());
    default:
      break;
  }
  Formula a = desugar(f.lhs());
  Formula b = desugar(f.rhs());
  switch (f.op()) {
    case Op::sssi:
      return Formula::conj(Formula::ssi(a, b), Formula::ssi(Formula::neg(b), Formula::top()));
    case Op::strict:
      return Formula::neg(Formula::ssi(Formula::conj(std::move(a), Formula::neg(std::move(b))), Formula::top()));
    default:
      return Formula::make(f.op(), std::move(a), std::move(b));
  }
}

Formula to_box_language(const Formula& f) {
  switch (arity(f.op())) {
    case 0: return f;
    case 1: return Formula::make(f.op(), to_box_language(f.lhs()));
    default: break;
  }
  Formula a = to_box_language(f.lhs());
  Formula b = to_box_language(f.rhs());
  auto ssi_as_box = [](const Formula& x, const Formula& y) {
    return Formula::conj(Formula::dia(x), Formula::box(Formula::imp(x, y)));
  };
  switch (f.op()) {
    case Op::ssi: return ssi_as_box(a, b);
    case Op::strict: return Formula::box(Formula::imp(std::move(a), std::move(b)));
    case Op::sssi: return Formula::conj(ssi_as_box(a, b), ssi_as_box(Formula::neg(b), Formula::top()));
    default: return Formula::make(f.op(), std::move(a), std::move(b));
  }
}

Formula to_strict_language(const Formula& f) {
  auto box = [](Formula x) { return Formula::strict(Formula::top(), std::move(x)); };
  auto dia = [](Formula x) { return Formula::neg(Formula::strict(Formula::top(), Formula::neg(std::move(x)))); };
  switch (f.op()) {
    case Op::var:
    case Op::bot: return f;
    case Op::box: return box(to_strict_language(f.lhs()));
    case Op::dia: return dia(to_strict_language(f.lhs()));
    default: break;
  }
  Formula a = to_strict_language(f.lhs());
  Formula b = to_strict_language(f.rhs());
  auto ssi_as_strict = [&](const Formula& x, const Formula& y) {
    return Formula::conj(dia(x), Formula::strict(x, y));
  };
  switch (f.op()) {
    case Op::ssi: return ssi_as_strict(a, b);
    case Op::sssi:
      return Formula::conj(ssi_as_strict(a, b), ssi_as_strict(Formula::neg(b), Formula::top()));
    default: return Formula::make(f.op(), std::move(a), std::move(b));
  }
}

}  // namespace ssi
