#include "ssi/text.hpp"

#include <cctype>
#include <nlohmann/json.hpp>
#include <optional>
#include <utility>
#include <vector>

namespace ssi {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column),
      detail_(what) {}

namespace {

enum class Tok {
  ident,
  kw_bot,
  kw_top,
  kw_box,
  kw_dia,
  tilde,
  amp,
  bar,
  imp,     // ->
  strict,  // =>
  ssi,     // |>
  sssi,    // ||>
  lparen,
  rparen,
  end,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(src.substr(i, len)), line, col});
    i += len;
    col += len;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    auto rest = src.substr(i);
    if (rest.starts_with("||>")) { push(Tok::sssi, 3); continue; }
    if (rest.starts_with("|>")) { push(Tok::ssi, 2); continue; }
    if (rest.starts_with("->")) { push(Tok::imp, 2); continue; }
    if (rest.starts_with("=>")) { push(Tok::strict, 2); continue; }
    switch (c) {
      case '|': push(Tok::bar, 1); continue;
      case '&': push(Tok::amp, 1); continue;
      case '~': push(Tok::tilde, 1); continue;
      case '(': push(Tok::lparen, 1); continue;
      case ')': push(Tok::rparen, 1); continue;
      default: break;
    }
    if (is_ident_start(c)) {
      std::size_t len = 1;
      while (i + len < src.size() && is_ident_char(src[i + len])) ++len;
      const auto word = src.substr(i, len);
      Tok kind = Tok::ident;
      if (word == "bot") kind = Tok::kw_bot;
      else if (word == "top") kind = Tok::kw_top;
      else if (word == "box") kind = Tok::kw_box;
      else if (word == "dia") kind = Tok::kw_dia;
      push(kind, len);
      continue;
    }
    throw ParseError("unknown token '" + std::string(1, c) + "'", line, col);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

std::optional<Op> arrow_op(Tok t) {
  switch (t) {
    case Tok::imp: return Op::imp;
    case Tok::strict: return Op::strict;
    case Tok::ssi: return Op::ssi;
    case Tok::sssi: return Op::sssi;
    default: return std::nullopt;
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = arrow();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "' after formula");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  Formula arrow() {
    Formula lhs = disj();
    if (auto op = arrow_op(peek().kind)) {
      next();
      return Formula::make(*op, std::move(lhs), same_arrow(*op));
    }
    return lhs;
  }

  // Right operand of an arrow; further arrows must be the same connective.
  Formula same_arrow(Op op) {
    Formula lhs = disj();
    if (auto next_op = arrow_op(peek().kind)) {
      if (*next_op != op) fail("mixing '" + peek().text + "' with another arrow needs parentheses");
      next();
      return Formula::make(op, std::move(lhs), same_arrow(op));
    }
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    if (peek().kind == Tok::bar) {
      next();
      return Formula::disj(std::move(lhs), disj());
    }
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    if (peek().kind == Tok::amp) {
      next();
      return Formula::conj(std::move(lhs), conj());
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::tilde: next(); return Formula::neg(unary());
      case Tok::kw_box: next(); return Formula::box(unary());
      case Tok::kw_dia: next(); return Formula::dia(unary());
      default: return atom();
    }
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::ident: next(); return Formula::var(t.text);
      case Tok::kw_bot: next(); return Formula::bot();
      case Tok::kw_top: next(); return Formula::top();
      case Tok::lparen: {
        next();
        Formula inner = arrow();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        next();
        return inner;
      }
      case Tok::end: fail("unexpected end of input");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct Symbols {
  std::string_view bot, top, neg, box, dia, conj, disj, imp, strict, ssi, sssi;
};

constexpr Symbols ascii{"bot", "top", "~", "box ", "dia ", " & ", " | ", " -> ", " => ", " |> ", " ||> "};
constexpr Symbols unicode{"⊥", "⊤", "¬", "□", "◇", " ∧ ", " ∨ ", " ⊃ ", " ⇒ ", " ▷ ", " ▶ "};

enum Level : int { arrow_level = 1, disj_level = 2, conj_level = 3, prefix_level = 4, atom_level = 5 };

int level(const Formula& f) {
  if (f.is_top()) return atom_level;
  if (f.is_negation()) return prefix_level;
  switch (f.op()) {
    case Op::var:
    case Op::bot: return atom_level;
    case Op::box:
    case Op::dia: return prefix_level;
    case Op::conj: return conj_level;
    case Op::disj: return disj_level;
    default: return arrow_level;
  }
}

class Printer {
 public:
  explicit Printer(const Symbols& sym) : sym_(sym) {}

  void emit(const Formula& f) {
    if (f.is_top()) { out_ += sym_.top; return; }
    if (f.is_negation()) { out_ += sym_.neg; operand(f.lhs(), level(f.lhs()) < prefix_level); return; }
    switch (f.op()) {
      case Op::var: out_ += f.name(); return;
      case Op::bot: out_ += sym_.bot; return;
      case Op::box: out_ += sym_.box; operand(f.lhs(), level(f.lhs()) < prefix_level); return;
      case Op::dia: out_ += sym_.dia; operand(f.lhs(), level(f.lhs()) < prefix_level); return;
      default: break;
    }
    const int lv = level(f);
    operand(f.lhs(), level(f.lhs()) <= lv);
    out_ += infix(f.op());
    const Formula& r = f.rhs();
    const bool other_arrow = lv == arrow_level && level(r) == arrow_level && r.op() != f.op();
    operand(r, level(r) < lv || other_arrow);
  }

  std::string take() { return std::move(out_); }

 private:
  void operand(const Formula& f, bool parens) {
    if (parens) out_ += '(';
    emit(f);
    if (parens) out_ += ')';
  }

  std::string_view infix(Op op) const {
    switch (op) {
      case Op::conj: return sym_.conj;
      case Op::disj: return sym_.disj;
      case Op::imp: return sym_.imp;
      case Op::strict: return sym_.strict;
      case Op::ssi: return sym_.ssi;
      default: return sym_.sssi;
    }
  }

  const Symbols& sym_;
  std::string out_;
};

nlohmann::ordered_json dump(const Formula& f) {
  nlohmann::ordered_json args = nlohmann::ordered_json::array();
  switch (arity(f.op())) {
    case 0:
      if (f.op() == Op::var) args.push_back(f.name());
      break;
    case 1:
      args.push_back(dump(f.lhs()));
      break;
    default:
      args.push_back(dump(f.lhs()));
      args.push_back(dump(f.rhs()));
  }
  nlohmann::ordered_json node;
  node["op"] = op_name(f.op());
  node["args"] = std::move(args);
  return node;
}

Formula load(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("op") || !j.contains("args") || !j["args"].is_array())
    throw std::invalid_argument("formula node needs \"op\" and \"args\"");
  const auto name = j["op"].get<std::string>();
  const auto& args = j["args"];
  for (Op op : {Op::var, Op::bot, Op::conj, Op::disj, Op::imp, Op::ssi, Op::sssi, Op::box, Op::dia, Op::strict}) {
    if (op_name(op) != name) continue;
    const auto want = static_cast<std::size_t>(op == Op::var ? 1 : arity(op));
    if (args.size() != want) throw std::invalid_argument("wrong argument count for \"" + name + "\"");
    if (op == Op::var) return Formula::var(args[0].get<std::string>());
    if (op == Op::bot) return Formula::bot();
    if (arity(op) == 1) return Formula::make(op, load(args[0]));
    return Formula::make(op, load(args[0]), load(args[1]));
  }
  throw std::invalid_argument("unknown connective \"" + name + "\"");
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).run(); }

std::string print(const Formula& f) {
  Printer p(ascii);
  p.emit(f);
  return p.take();
}

std::string print_unicode(const Formula& f) {
  Printer p(unicode);
  p.emit(f);
  return p.take();
}

std::string to_json(const Formula& f) { return dump(f).dump(); }

Formula formula_from_json(std::string_view text) {
  try {
    return load(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(e.what());
  }
}

}  // namespace ssi
