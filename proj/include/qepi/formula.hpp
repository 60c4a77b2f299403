#pragma once

// Syntax of epistemic propositional formulas: atoms, the constants, the
// classical connectives and the single-agent knowledge operator K.
//
// Concrete syntax (also the wire format of theory files and reports):
//
//   formula := imp ('<->' formula)?          right associative
//   imp     := or ('->' imp)?                right associative
//   or      := and ('|' and)*                left associative
//   and     := unary ('&' unary)*            left associative
//   unary   := '!' unary | 'K' '(' formula ')' | '(' formula ')'
//            | 'true' | 'false' | atom
//   atom    := [a-z][a-zA-Z0-9_]*  (minus reserved words)

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qepi/error.hpp"

namespace qepi {

class Atom {
 public:
  explicit Atom(std::string name) : name_(std::move(name)) {
    if (!is_valid(name_)) {
      throw InvalidAtom("invalid atom name '" + name_ + "'");
    }
  }

  static bool is_reserved(std::string_view s) {
    static constexpr std::array<std::string_view, 8> kReserved = {
        "K", "and", "or", "not", "implies", "iff", "true", "false"};
    return std::find(kReserved.begin(), kReserved.end(), s) != kReserved.end();
  }

  static bool is_valid(std::string_view s) {
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
    for (char c : s) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return !is_reserved(s);
  }

  const std::string& name() const noexcept { return name_; }

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;

 private:
  std::string name_;
};

enum class Op { Top, Bottom, Var, Not, And, Or, Implies, Iff, Know };

// Immutable formula tree with shared subterms. Copies are cheap.
class Formula {
 public:
  static Formula Top() { return Formula(Node{Op::Top, std::nullopt, {}, {}}); }
  static Formula Bottom() { return Formula(Node{Op::Bottom, std::nullopt, {}, {}}); }
  static Formula Var(Atom a) { return Formula(Node{Op::Var, std::move(a), {}, {}}); }
  static Formula Var(std::string name) { return Var(Atom(std::move(name))); }
  static Formula Not(Formula f) { return Formula(Node{Op::Not, std::nullopt, std::move(f.node_), {}}); }
  static Formula Know(Formula f) { return Formula(Node{Op::Know, std::nullopt, std::move(f.node_), {}}); }
  static Formula And(Formula a, Formula b) { return Binary(Op::And, std::move(a), std::move(b)); }
  static Formula Or(Formula a, Formula b) { return Binary(Op::Or, std::move(a), std::move(b)); }
  static Formula Implies(Formula a, Formula b) { return Binary(Op::Implies, std::move(a), std::move(b)); }
  static Formula Iff(Formula a, Formula b) { return Binary(Op::Iff, std::move(a), std::move(b)); }

  Op op() const noexcept { return node_->op; }
  bool is_unary() const noexcept { return op() == Op::Not || op() == Op::Know; }
  bool is_binary() const noexcept {
    return op() == Op::And || op() == Op::Or || op() == Op::Implies || op() == Op::Iff;
  }

  // Only for Var.
  const Atom& atom() const { return *node_->atom; }
  // Operand of Not/Know.
  Formula sub() const { return Formula(node_->left); }
  // Operands of binary connectives.
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
      case Op::Top:
      case Op::Bottom:
        return true;
      case Op::Var:
        return a.atom() == b.atom();
      case Op::Not:
      case Op::Know:
        return a.sub() == b.sub();
      default:
        return a.left() == b.left() && a.right() == b.right();
    }
  }

 private:
  struct Node {
    Op op;
    std::optional<Atom> atom;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Formula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula Binary(Op op, Formula a, Formula b) {
    return Formula(Node{op, std::nullopt, std::move(a.node_), std::move(b.node_)});
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

inline void collect_atoms(const Formula& f, std::vector<Atom>& out) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bottom:
      return;
    case Op::Var:
      out.push_back(f.atom());
      return;
    case Op::Not:
    case Op::Know:
      collect_atoms(f.sub(), out);
      return;
    default:
      collect_atoms(f.left(), out);
      collect_atoms(f.right(), out);
  }
}

inline void sort_unique(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

}  // namespace detail

// Distinct atoms of `f`, sorted by name.
inline std::vector<Atom> atoms(const Formula& f) {
  std::vector<Atom> out;
  detail::collect_atoms(f, out);
  detail::sort_unique(out);
  return out;
}

// Union of the atoms of several formulas, sorted by name.
template <typename Range>
std::vector<Atom> atoms_of_all(const Range& formulas) {
  std::vector<Atom> out;
  for (const Formula& f : formulas) detail::collect_atoms(f, out);
  detail::sort_unique(out);
  return out;
}

inline std::size_t modal_depth(const Formula& f) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bottom:
    case Op::Var:
      return 0;
    case Op::Not:
      return modal_depth(f.sub());
    case Op::Know:
      return 1 + modal_depth(f.sub());
    default:
      return std::max(modal_depth(f.left()), modal_depth(f.right()));
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

// Binding strength; higher binds tighter.
inline int precedence(Op op) {
  switch (op) {
    case Op::Iff:
      return 1;
    case Op::Implies:
      return 2;
    case Op::Or:
      return 3;
    case Op::And:
      return 4;
    default:
      return 5;
  }
}

inline const char* symbol(Op op) {
  switch (op) {
    case Op::And:
      return " & ";
    case Op::Or:
      return " | ";
    case Op::Implies:
      return " -> ";
    case Op::Iff:
      return " <-> ";
    default:
      return "";
  }
}

inline void render_into(const Formula& f, std::string& out);

inline void render_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(f, out);
  if (parens) out += ')';
}

inline void render_into(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Top:
      out += "true";
      return;
    case Op::Bottom:
      out += "false";
      return;
    case Op::Var:
      out += f.atom().name();
      return;
    case Op::Not:
      out += '!';
      render_child(f.sub(), precedence(f.sub().op()) < 5, out);
      return;
    case Op::Know:
      out += "K(";
      render_into(f.sub(), out);
      out += ')';
      return;
    default: {
      const int p = precedence(f.op());
      const bool right_assoc = f.op() == Op::Implies || f.op() == Op::Iff;
      const int lp = precedence(f.left().op());
      const int rp = precedence(f.right().op());
      render_child(f.left(), right_assoc ? lp <= p : lp < p, out);
      out += symbol(f.op());
      render_child(f.right(), right_assoc ? rp < p : rp <= p, out);
    }
  }
}

}  // namespace detail

// Minimally parenthesized concrete syntax; parse(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

enum class Tok { Ident, LParen, RParen, Bang, Amp, Bar, Arrow, DArrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;  // 1-based
};

inline std::string describe(const Token& t) {
  return t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t at = pos_ + 1;
    if (pos_ >= text_.size()) return {Tok::End, "", at};
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      Token t{Tok::Ident, std::string(text_.substr(pos_, end - pos_)), at};
      pos_ = end;
      return t;
    }
    if (text_.substr(pos_, 3) == "<->") {
      pos_ += 3;
      return {Tok::DArrow, "<->", at};
    }
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return {Tok::Arrow, "->", at};
    }
    ++pos_;
    switch (c) {
      case '(':
        return {Tok::LParen, "(", at};
      case ')':
        return {Tok::RParen, ")", at};
      case '!':
        return {Tok::Bang, "!", at};
      case '&':
        return {Tok::Amp, "&", at};
      case '|':
        return {Tok::Bar, "|", at};
      default:
        break;
    }
    if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f) {
      throw SyntaxError(at, "unexpected byte 0x" + hex(static_cast<unsigned char>(c)));
    }
    throw SyntaxError(at, std::string("unexpected character '") + c + "'");
  }

 private:
  static std::string hex(unsigned char c) {
    static constexpr char kDigits[] = "0123456789abcdef";
    return {kDigits[c >> 4], kDigits[c & 0xf]};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  Formula parse_all() {
    Formula f = parse_iff();
    if (cur_.kind == Tok::RParen) {
      throw SyntaxError(cur_.offset, "unbalanced parentheses: unmatched ')'");
    }
    if (cur_.kind != Tok::End) {
      throw SyntaxError(cur_.offset, "expected binary connective or end of input, found " + describe(cur_));
    }
    return f;
  }

 private:
  static constexpr std::size_t kMaxDepth = 2000;

  struct DepthGuard {
    DepthGuard(Parser& p, std::size_t offset) : p_(p) {
      if (++p_.depth_ > kMaxDepth) throw SyntaxError(offset, "nesting too deep");
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  void advance() { cur_ = lexer_.next(); }

  Formula parse_iff() {
    DepthGuard guard(*this, cur_.offset);
    Formula lhs = parse_implies();
    if (cur_.kind == Tok::DArrow) {
      advance();
      return Formula::Iff(std::move(lhs), parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    DepthGuard guard(*this, cur_.offset);
    Formula lhs = parse_or();
    if (cur_.kind == Tok::Arrow) {
      advance();
      return Formula::Implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (cur_.kind == Tok::Bar) {
      advance();
      lhs = Formula::Or(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (cur_.kind == Tok::Amp) {
      advance();
      lhs = Formula::And(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  void expect_close(std::size_t open_offset) {
    if (cur_.kind == Tok::RParen) {
      advance();
      return;
    }
    if (cur_.kind == Tok::End) {
      throw SyntaxError(cur_.offset, "unbalanced parentheses: expected ')' to close '(' at offset " +
                                         std::to_string(open_offset));
    }
    throw SyntaxError(cur_.offset, "expected ')' or binary connective, found " + describe(cur_));
  }

  Formula parse_unary() {
    DepthGuard guard(*this, cur_.offset);
    const Token t = cur_;
    switch (t.kind) {
      case Tok::Bang:
        advance();
        return Formula::Not(parse_unary());
      case Tok::LParen: {
        advance();
        Formula f = parse_iff();
        expect_close(t.offset);
        return f;
      }
      case Tok::Ident:
        return parse_ident(t);
      default:
        throw SyntaxError(t.offset,
                          "expected formula (atom, 'true', 'false', '!', 'K(' or '('), found " + describe(t));
    }
  }

  Formula parse_ident(const Token& t) {
    advance();
    if (t.text == "K") {
      if (cur_.kind != Tok::LParen) {
        throw SyntaxError(cur_.offset, "expected '(' after K, found " + describe(cur_));
      }
      const std::size_t open = cur_.offset;
      advance();
      Formula f = parse_iff();
      expect_close(open);
      return Formula::Know(std::move(f));
    }
    if (t.text == "true") return Formula::Top();
    if (t.text == "false") return Formula::Bottom();
    if (Atom::is_reserved(t.text)) {
      throw SyntaxError(t.offset, "reserved word '" + t.text + "' cannot be used as an atom");
    }
    if (!Atom::is_valid(t.text)) {
      throw SyntaxError(t.offset, "invalid atom name '" + t.text + "' (atoms match [a-z][a-zA-Z0-9_]*)");
    }
    return Formula::Var(Atom(t.text));
  }

  Lexer lexer_;
  Token cur_{Tok::End, "", 1};
  std::size_t depth_ = 0;
};

}  // namespace detail

inline Formula parse(std::string_view text) { return detail::Parser(text).parse_all(); }

}  // namespace qepi
