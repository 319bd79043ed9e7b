#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace ssi {

/// Principal connective of a formula node.
///
/// `imp` is material implication, `ssi` super-strict implication (weak),
/// `sssi` strong super-strict implication and `strict` strict implication.
/// Top and negation are not connectives: `top` is `bot -> bot` and `~A` is
/// `A -> bot`.
enum class Op : unsigned char {
  var,
  bot,
  conj,
  disj,
  imp,
  ssi,
  sssi,
  box,
  dia,
  strict,
};

constexpr int arity(Op op) noexcept {
  switch (op) {
    case Op::var:
    case Op::bot:
      return 0;
    case Op::box:
    case Op::dia:
      return 1;
    default:
      return 2;
  }
}

constexpr bool is_binary(Op op) noexcept { return arity(op) == 2; }

/// True for the intensional connectives (the ones that look at successors).
constexpr bool is_modal(Op op) noexcept {
  return op == Op::ssi || op == Op::sssi || op == Op::box || op == Op::dia ||
         op == Op::strict;
}

/// Short stable name used by the JSON dump ("var", "and", "ssi", ...).
std::string_view op_name(Op op) noexcept;

/// Immutable formula tree with shared structure.
///
/// Copying a Formula is cheap (one shared_ptr). Equality and ordering are
/// structural.
class Formula {
 public:
  /// Default-constructed formula is `bot`.
  Formula();

  static Formula var(std::string name);
  static Formula bot();
  static Formula top();
  static Formula neg(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula ssi(Formula l, Formula r);
  static Formula sssi(Formula l, Formula r);
  static Formula strict(Formula l, Formula r);
  static Formula box(Formula f);
  static Formula dia(Formula f);

  /// Builds a node of the given binary or unary shape. Unary nodes ignore `r`.
  static Formula make(Op op, Formula l, Formula r = {});

  Op op() const noexcept;
  /// Variable name; empty for non-variables.
  const std::string& name() const noexcept;
  /// Left (or only) child. Precondition: arity(op()) >= 1.
  const Formula& lhs() const noexcept;
  /// Right child. Precondition: arity(op()) == 2.
  const Formula& rhs() const noexcept;
  /// Child by index (0 = left/only, 1 = right).
  const Formula& child(std::size_t i) const noexcept { return i == 0 ? lhs() : rhs(); }

  /// Recognizes `A -> bot`.
  bool is_negation() const noexcept;
  /// Recognizes `bot -> bot`.
  bool is_top() const noexcept;

  /// Number of nodes in the tree.
  std::size_t size() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static const std::shared_ptr<const Node>& shared_bot();

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Op op = Op::bot;
  std::string name;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
  std::size_t size = 1;
};

inline Op Formula::op() const noexcept { return node_->op; }
inline const std::string& Formula::name() const noexcept { return node_->name; }
inline const Formula& Formula::lhs() const noexcept { return *node_->lhs; }
inline const Formula& Formula::rhs() const noexcept { return *node_->rhs; }
inline std::size_t Formula::size() const noexcept { return node_->size; }

/// Variables occurring in `f`, sorted by name.
std::set<std::string> variables(const Formula& f);

}  // namespace ssi
