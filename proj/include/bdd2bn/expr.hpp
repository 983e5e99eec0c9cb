/*!
  \file expr.hpp
  \brief Boolean expression AST, parser and brute-force truth-table oracle.

  Concrete syntax: variables x1..xn, constants 0 and 1, operators ! & |
  with precedence NOT > AND > OR, and a ternary h ? c1 : c0 at lowest
  precedence. Expressions are immutable and freely shareable.
*/

#pragma once

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bdd2bn {

/*! \brief If-then-else on bits: c0 when the hypothesis is 0, c1 when it is 1. */
inline constexpr bool ite(bool h, bool c0, bool c1) { return h ? c1 : c0; }

/*! \brief Default bound for operations that enumerate all 2^n assignments. */
inline constexpr unsigned default_exhaustive_cap = 20;

/*! \brief Total mapping from the n input variables to {0,1}. */
class assignment {
public:
  assignment() = default;
  explicit assignment(std::vector<bool> bits) : bits_(std::move(bits)) {}

  /*! \brief Binary expansion of `index` over `arity` bits, x1 as the most
   * significant bit. Row k of a truth table corresponds to from_index(k, n). */
  static assignment from_index(std::uint64_t index, unsigned arity) {
    std::vector<bool> bits(arity);
    for (unsigned i = 0; i < arity; ++i) {
      bits[i] = (index >> (arity - 1 - i)) & 1u;
    }
    return assignment(std::move(bits));
  }

  unsigned arity() const { return static_cast<unsigned>(bits_.size()); }
  bool operator[](unsigned var) const { return bits_.at(var); }
  void set(unsigned var, bool value) { bits_.at(var) = value; }

  std::uint64_t to_index() const {
    std::uint64_t k = 0;
    for (bool b : bits_) k = (k << 1) | (b ? 1u : 0u);
    return k;
  }

  const std::vector<bool>& bits() const { return bits_; }
  friend bool operator==(const assignment&, const assignment&) = default;

private:
  std::vector<bool> bits_;
};

/*! \brief Immutable Boolean expression tree.
 *
 * Nodes are shared via reference counting; an expr is a cheap handle.
 * Variable indices are 0-based internally (x1 is index 0).
 */
class expr {
public:
  enum class kind : std::uint8_t {
    constant,
    variable,
    negation,
    conjunction,
    disjunction,
    if_then_else,
  };

  expr() : expr(constant(false)) {}

  static expr constant(bool value) {
    auto n = std::make_shared<node>();
    n->k = kind::constant;
    n->value = value;
    return expr(std::move(n));
  }

  static expr variable(unsigned index) {
    auto n = std::make_shared<node>();
    n->k = kind::variable;
    n->var = index;
    return expr(std::move(n));
  }

  friend expr operator!(const expr& e) {
    auto n = std::make_shared<node>();
    n->k = kind::negation;
    n->a = e.root_;
    return expr(std::move(n));
  }

  friend expr operator&(const expr& l, const expr& r) {
    auto n = std::make_shared<node>();
    n->k = kind::conjunction;
    n->a = l.root_;
    n->b = r.root_;
    return expr(std::move(n));
  }

  friend expr operator|(const expr& l, const expr& r) {
    auto n = std::make_shared<node>();
    n->k = kind::disjunction;
    n->a = l.root_;
    n->b = r.root_;
    return expr(std::move(n));
  }

  /*! \brief Builds [h => (c0, c1)]. */
  static expr if_then_else(const expr& h, const expr& c0, const expr& c1) {
    auto n = std::make_shared<node>();
    n->k = kind::if_then_else;
    n->a = h.root_;
    n->b = c0.root_;
    n->c = c1.root_;
    return expr(std::move(n));
  }

  kind k() const { return root_->k; }
  bool is_constant() const { return root_->k == kind::constant; }

  bool value() const {
    assert(root_->k == kind::constant);
    return root_->value;
  }
  unsigned var() const {
    assert(root_->k == kind::variable);
    return root_->var;
  }
  expr child() const {
    assert(root_->k == kind::negation);
    return expr(root_->a);
  }
  expr left() const {
    assert(root_->k == kind::conjunction || root_->k == kind::disjunction);
    return expr(root_->a);
  }
  expr right() const {
    assert(root_->k == kind::conjunction || root_->k == kind::disjunction);
    return expr(root_->b);
  }
  expr cond() const {
    assert(root_->k == kind::if_then_else);
    return expr(root_->a);
  }
  expr if_false() const {
    assert(root_->k == kind::if_then_else);
    return expr(root_->b);
  }
  expr if_true() const {
    assert(root_->k == kind::if_then_else);
    return expr(root_->c);
  }

  /*! \brief Structural equality. */
  friend bool operator==(const expr& lhs, const expr& rhs) {
    return equal_nodes(lhs.root_.get(), rhs.root_.get());
  }

private:
  struct node {
    kind k = kind::constant;
    bool value = false;
    unsigned var = 0;
    std::shared_ptr<const node> a, b, c;
  };

  explicit expr(std::shared_ptr<const node> root) : root_(std::move(root)) {}

  static bool equal_nodes(const node* l, const node* r) {
    if (l == r) return true;
    if (l->k != r->k) return false;
    switch (l->k) {
      case kind::constant: return l->value == r->value;
      case kind::variable: return l->var == r->var;
      case kind::negation: return equal_nodes(l->a.get(), r->a.get());
      case kind::conjunction:
      case kind::disjunction:
        return equal_nodes(l->a.get(), r->a.get()) && equal_nodes(l->b.get(), r->b.get());
      case kind::if_then_else:
        return equal_nodes(l->a.get(), r->a.get()) && equal_nodes(l->b.get(), r->b.get()) &&
               equal_nodes(l->c.get(), r->c.get());
    }
    return false;
  }

  std::shared_ptr<const node> root_;
};

/*! \brief 1 + the highest variable index occurring in f (0 for variable-free f). */
inline unsigned min_arity(const expr& f) {
  switch (f.k()) {
    case expr::kind::constant: return 0;
    case expr::kind::variable: return f.var() + 1;
    case expr::kind::negation: return min_arity(f.child());
    case expr::kind::conjunction:
    case expr::kind::disjunction:
      return std::max(min_arity(f.left()), min_arity(f.right()));
    case expr::kind::if_then_else:
      return std::max(min_arity(f.cond()),
                      std::max(min_arity(f.if_false()), min_arity(f.if_true())));
  }
  return 0;
}

/*! \brief Standard Boolean semantics; the ternary follows the ite primitive. */
inline bool eval(const expr& f, const assignment& x) {
  switch (f.k()) {
    case expr::kind::constant: return f.value();
    case expr::kind::variable:
      if (f.var() >= x.arity()) {
        throw std::out_of_range("eval: variable x" + std::to_string(f.var() + 1) +
                                " exceeds assignment arity " + std::to_string(x.arity()));
      }
      return x[f.var()];
    case expr::kind::negation: return !eval(f.child(), x);
    case expr::kind::conjunction: return eval(f.left(), x) && eval(f.right(), x);
    case expr::kind::disjunction: return eval(f.left(), x) || eval(f.right(), x);
    case expr::kind::if_then_else:
      return ite(eval(f.cond(), x), eval(f.if_false(), x), eval(f.if_true(), x));
  }
  return false;
}

/*! \brief Brute-force oracle: entry k is eval(f, assignment::from_index(k, n)).
 *
 * Refuses n above `cap`; the enumeration is deliberately exponential.
 */
inline std::vector<bool> truth_table(const expr& f, unsigned n,
                                     unsigned cap = default_exhaustive_cap) {
  if (n > cap) {
    throw std::length_error("truth_table: arity " + std::to_string(n) +
                            " exceeds the exhaustive cap " + std::to_string(cap));
  }
  if (min_arity(f) > n) {
    throw std::out_of_range("truth_table: expression mentions x" +
                            std::to_string(min_arity(f)) + " but arity is " +
                            std::to_string(n));
  }
  std::vector<bool> table(std::uint64_t(1) << n);
  assignment x{std::vector<bool>(n)};
  for (std::uint64_t k = 0; k < table.size(); ++k) {
    for (unsigned i = 0; i < n; ++i) {
      x.set(i, (k >> (n - 1 - i)) & 1u);
    }
    table[k] = eval(f, x);
  }
  return table;
}

/*! \brief Syntax error with byte offset and the set of expected tokens. */
class parse_error : public std::runtime_error {
public:
  parse_error(std::size_t offset, std::vector<std::string> expected, const std::string& got)
      : std::runtime_error(make_message(offset, expected, got)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  static std::string make_message(std::size_t offset, const std::vector<std::string>& expected,
                                  const std::string& got) {
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", got " + got;
    return msg;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

/*! \brief An identifier names a variable beyond the declared arity. */
class undeclared_variable : public std::runtime_error {
public:
  undeclared_variable(std::size_t offset, unsigned index, unsigned arity)
      : std::runtime_error("undeclared variable x" + std::to_string(index + 1) +
                           " at offset " + std::to_string(offset) + ": declared arity is " +
                           std::to_string(arity)),
        offset_(offset),
        index_(index) {}

  std::size_t offset() const { return offset_; }
  unsigned index() const { return index_; }

private:
  std::size_t offset_;
  unsigned index_;
};

namespace detail {

class parser {
public:
  parser(std::string_view text, std::optional<unsigned> declared_arity)
      : text_(text), arity_(declared_arity) {}

  expr run() {
    expr e = parse_ternary();
    skip_ws();
    if (pos_ != text_.size()) {
      fail({"end of input", "'&'", "'|'", "'?'"});
    }
    return e;
  }

private:
  // expr := or ('?' expr ':' expr)?   with  h ? c1 : c0  ->  [h => (c0, c1)]
  expr parse_ternary() {
    expr h = parse_or();
    skip_ws();
    if (peek() == '?') {
      ++pos_;
      expr c1 = parse_ternary();
      skip_ws();
      if (peek() != ':') fail({"':'"});
      ++pos_;
      expr c0 = parse_ternary();
      return expr::if_then_else(h, c0, c1);
    }
    return h;
  }

  expr parse_or() {
    expr e = parse_and();
    while (true) {
      skip_ws();
      if (peek() != '|') return e;
      ++pos_;
      e = e | parse_and();
    }
  }

  expr parse_and() {
    expr e = parse_unary();
    while (true) {
      skip_ws();
      if (peek() != '&') return e;
      ++pos_;
      e = e & parse_unary();
    }
  }

  expr parse_unary() {
    skip_ws();
    if (peek() == '!') {
      ++pos_;
      return !parse_unary();
    }
    return parse_atom();
  }

  expr parse_atom() {
    skip_ws();
    char c = peek();
    if (c == '0' || c == '1') {
      ++pos_;
      return expr::constant(c == '1');
    }
    if (c == '(') {
      ++pos_;
      expr e = parse_ternary();
      skip_ws();
      if (peek() != ')') fail({"')'"});
      ++pos_;
      return e;
    }
    if (c == 'x') {
      return parse_ident();
    }
    fail({"'0'", "'1'", "'('", "'!'", "a variable x<k>"});
  }

  expr parse_ident() {
    std::size_t start = pos_;
    ++pos_; // 'x'
    std::uint64_t number = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      number = number * 10 + (text_[pos_] - '0');
      if (number > 1u << 24) break; // avoid overflow on absurd indices
      ++pos_;
      ++digits;
    }
    if (digits == 0) {
      fail_at(pos_, {"digits after 'x'"});
    }
    if (number == 0) {
      fail_at(start, {"a variable index of 1 or more (variables are x1..xn)"});
    }
    unsigned index = static_cast<unsigned>(number - 1);
    if (arity_ && index >= *arity_) {
      throw undeclared_variable(start, index, *arity_);
    }
    return expr::variable(index);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    fail_at(pos_, std::move(expected));
  }

  [[noreturn]] void fail_at(std::size_t offset, std::vector<std::string> expected) const {
    std::string got = offset < text_.size()
                          ? "'" + std::string(1, text_[offset]) + "'"
                          : "end of input";
    throw parse_error(offset, std::move(expected), got);
  }

  std::string_view text_;
  std::optional<unsigned> arity_;
  std::size_t pos_ = 0;
};

} // namespace detail

/*! \brief Parses the concrete syntax into an AST.
 *
 * No simplification is applied; the BDD layer is the canonicalizer. When
 * `declared_arity` is given, identifiers beyond it raise undeclared_variable.
 */
inline expr parse(std::string_view text, std::optional<unsigned> declared_arity = std::nullopt) {
  return detail::parser(text, declared_arity).run();
}

namespace detail {

// Precedence levels used by the canonical printer. A child is parenthesized
// whenever its level is below what its context requires, so parse(to_string(e))
// rebuilds e exactly.
inline int print_level(expr::kind k) {
  switch (k) {
    case expr::kind::if_then_else: return 0;
    case expr::kind::disjunction: return 1;
    case expr::kind::conjunction: return 2;
    case expr::kind::negation: return 3;
    default: return 4;
  }
}

inline void print_to(const expr& e, int min_level, std::string& out) {
  bool parens = print_level(e.k()) < min_level;
  if (parens) out += '(';
  switch (e.k()) {
    case expr::kind::constant: out += e.value() ? '1' : '0'; break;
    case expr::kind::variable: out += 'x' + std::to_string(e.var() + 1); break;
    case expr::kind::negation:
      out += '!';
      print_to(e.child(), 3, out);
      break;
    case expr::kind::conjunction:
      print_to(e.left(), 2, out);
      out += " & ";
      print_to(e.right(), 3, out);
      break;
    case expr::kind::disjunction:
      print_to(e.left(), 1, out);
      out += " | ";
      print_to(e.right(), 2, out);
      break;
    case expr::kind::if_then_else:
      print_to(e.cond(), 1, out);
      out += " ? ";
      print_to(e.if_true(), 0, out);
      out += " : ";
      print_to(e.if_false(), 0, out);
      break;
  }
  if (parens) out += ')';
}

} // namespace detail

/*! \brief Canonical pretty-printer; parse is a left inverse of it. */
inline std::string to_string(const expr& e) {
  std::string out;
  detail::print_to(e, 0, out);
  return out;
}

} // namespace bdd2bn
