#include "ssi/formula.hpp"

#include <stdexcept>
#include <utility>

namespace ssi {

std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::var: return "var";
    case Op::bot: return "bot";
    case Op::conj: return "and";
    case Op::disj: return "or";
    case Op::imp: return "imp";
    case Op::ssi: return "ssi";
    case Op::sssi: return "sssi";
    case Op::box: return "box";
    case Op::dia: return "dia";
    case Op::strict: return "strict";
  }
  return "?";
}

const std::shared_ptr<const Formula::Node>& Formula::shared_bot() {
  static const std::shared_ptr<const Node> node = std::make_shared<const Node>();
  return node;
}

Formula::Formula() : node_(shared_bot()) {}

Formula Formula::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be non-empty");
  auto node = std::make_shared<Node>();
  node->op = Op::var;
  node->name = std::move(name);
  return Formula(std::move(node));
}

Formula Formula::bot() { return Formula(); }

Formula Formula::top() { return imp(bot(), bot()); }

Formula Formula::neg(Formula f) { return imp(std::move(f), bot()); }

Formula Formula::make(Op op, Formula l, Formula r) {
  if (arity(op) == 0) throw std::invalid_argument("make() needs a unary or binary connective");
  auto node = std::make_shared<Node>();
  node->op = op;
  node->size = 1 + l.size();
  node->lhs = std::move(l);
  if (arity(op) == 2) {
    node->size += r.size();
    node->rhs = std::move(r);
  }
  return Formula(std::move(node));
}

Formula Formula::conj(Formula l, Formula r) { return make(Op::conj, std::move(l), std::move(r)); }
Formula Formula::disj(Formula l, Formula r) { return make(Op::disj, std::move(l), std::move(r)); }
Formula Formula::imp(Formula l, Formula r) { return make(Op::imp, std::move(l), std::move(r)); }
Formula Formula::ssi(Formula l, Formula r) { return make(Op::ssi, std::move(l), std::move(r)); }
Formula Formula::sssi(Formula l, Formula r) { return make(Op::sssi, std::move(l), std::move(r)); }
Formula Formula::strict(Formula l, Formula r) { return make(Op::strict, std::move(l), std::move(r)); }
Formula Formula::box(Formula f) { return make(Op::box, std::move(f)); }
Formula Formula::dia(Formula f) { return make(Op::dia, std::move(f)); }

bool Formula::is_negation() const noexcept { return op() == Op::imp && rhs().op() == Op::bot; }

bool Formula::is_top() const noexcept { return is_negation() && lhs().op() == Op::bot; }

bool operator==(const Formula& a, const Formula& b) noexcept {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  switch (arity(a.op())) {
    case 0:
      return a.name() <=> b.name();
    case 1:
      return a.lhs() <=> b.lhs();
    default:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
}

namespace {

void collect_variables(const Formula& f, std::set<std::string>& out) {
  switch (arity(f.op())) {
    case 0:
      if (f.op() == Op::var) out.insert(f.name());
      return;
    case 1:
      collect_variables(f.lhs(), out);
      return;
    default:
      collect_variables(f.lhs(), out);
      collect_variables(f.rhs(), out);
  }
}

}  // namespace

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  collect_variables(f, out);
  return out;
}

}  // namespace ssi
