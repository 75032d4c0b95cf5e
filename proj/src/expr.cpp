#include "hullbound/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>
#include <vector>

#include "hullbound/errors.hpp"

namespace hullbound {

namespace {

enum class UnaryFn { neg, sin, cos, exp, log, abs, sqrt };
enum class BinaryOp { add, sub, mul, div, pow };

}  // namespace

struct Expr::Node {
  enum class Kind { number, variable, pi, unary, binary };

  Kind kind;
  double value = 0.0;  // number
  UnaryFn fn = UnaryFn::neg;
  BinaryOp op = BinaryOp::add;
  std::shared_ptr<const Node> lhs;  // unary child / binary left
  std::shared_ptr<const Node> rhs;  // binary right
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make_number(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Kind::number;
  n->value = v;
  return n;
}

NodePtr make_leaf(Kind k) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  return n;
}

NodePtr make_unary(UnaryFn fn, NodePtr child) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Kind::unary;
  n->fn = fn;
  n->lhs = std::move(child);
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Kind::binary;
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

struct Token {
  enum class Kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };
  Kind kind;
  std::size_t offset;
  double value = 0.0;           // number
  std::string_view text = {};   // ident
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) {
      current_ = {Token::Kind::end, at};
      return;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': ++pos_; current_ = {Token::Kind::plus, at}; return;
      case '-': ++pos_; current_ = {Token::Kind::minus, at}; return;
      case '*': ++pos_; current_ = {Token::Kind::star, at}; return;
      case '/': ++pos_; current_ = {Token::Kind::slash, at}; return;
      case '^': ++pos_; current_ = {Token::Kind::caret, at}; return;
      case '(': ++pos_; current_ = {Token::Kind::lparen, at}; return;
      case ')': ++pos_; current_ = {Token::Kind::rparen, at}; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* begin = src_.data() + pos_;
      const char* end = src_.data() + src_.size();
      auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc{} || ptr == begin) throw ParseError("malformed number", at);
      pos_ += static_cast<std::size_t>(ptr - begin);
      current_ = {Token::Kind::number, at, v};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t len = 0;
      while (pos_ + len < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_ + len])) || src_[pos_ + len] == '_')) {
        ++len;
      }
      current_ = {Token::Kind::ident, at, 0.0, src_.substr(pos_, len)};
      pos_ += len;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_{Token::Kind::end, 0};
};

class Parser {
public:
  explicit Parser(std::string_view src) : lex_(src) {}

  NodePtr parse() {
    NodePtr root = additive(0);
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::end) throw ParseError("unexpected trailing input", t.offset);
    return root;
  }

private:
  void check_depth(std::size_t depth, std::size_t offset) const {
    if (depth > kMaxExprDepth) throw ParseError("depth limit exceeded", offset);
  }

  NodePtr additive(std::size_t depth) {
    check_depth(depth, lex_.peek().offset);
    NodePtr lhs = multiplicative(depth);
    for (;;) {
      const Token::Kind k = lex_.peek().kind;
      if (k != Token::Kind::plus && k != Token::Kind::minus) return lhs;
      lex_.take();
      lhs = make_binary(k == Token::Kind::plus ? BinaryOp::add : BinaryOp::sub, lhs,
                        multiplicative(depth));
    }
  }

  NodePtr multiplicative(std::size_t depth) {
    NodePtr lhs = unary(depth);
    for (;;) {
      const Token::Kind k = lex_.peek().kind;
      if (k != Token::Kind::star && k != Token::Kind::slash) return lhs;
      lex_.take();
      lhs = make_binary(k == Token::Kind::star ? BinaryOp::mul : BinaryOp::div, lhs, unary(depth));
    }
  }

  NodePtr unary(std::size_t depth) {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::minus) {
      check_depth(depth + 1, t.offset);
      lex_.take();
      return make_unary(UnaryFn::neg, unary(depth + 1));
    }
    return power(depth);
  }

  NodePtr power(std::size_t depth) {
    NodePtr base = primary(depth);
    if (lex_.peek().kind != Token::Kind::caret) return base;
    const Token t = lex_.take();
    check_depth(depth + 1, t.offset);
    return make_binary(BinaryOp::pow, base, unary(depth + 1));
  }

  NodePtr primary(std::size_t depth) {
    const Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::number:
        return make_number(t.value);
      case Token::Kind::lparen: {
        check_depth(depth + 1, t.offset);
        NodePtr inner = additive(depth + 1);
        expect_rparen();
        return inner;
      }
      case Token::Kind::ident: {
        if (t.text == "x") return make_leaf(Kind::variable);
        if (t.text == "pi") return make_leaf(Kind::pi);
        UnaryFn fn;
        if (t.text == "sin") fn = UnaryFn::sin;
        else if (t.text == "cos") fn = UnaryFn::cos;
        else if (t.text == "exp") fn = UnaryFn::exp;
        else if (t.text == "log") fn = UnaryFn::log;
        else if (t.text == "abs") fn = UnaryFn::abs;
        else if (t.text == "sqrt") fn = UnaryFn::sqrt;
        else throw ParseError("unknown identifier '" + std::string(t.text) + "'", t.offset);
        const Token open = lex_.take();
        if (open.kind != Token::Kind::lparen)
          throw ParseError("expected '(' after function name", open.offset);
        check_depth(depth + 1, open.offset);
        NodePtr arg = additive(depth + 1);
        expect_rparen();
        return make_unary(fn, std::move(arg));
      }
      case Token::Kind::end:
        throw ParseError("unexpected end of input", t.offset);
      default:
        throw ParseError("expected a value", t.offset);
    }
  }

  void expect_rparen() {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::rparen) throw ParseError("expected ')'", t.offset);
  }

  Lexer lex_;
};

double eval_node(const Expr::Node& n, double x) {
  double r;
  switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::variable: return x;
    case Kind::pi: return std::numbers::pi;
    case Kind::unary: {
      const double v = eval_node(*n.lhs, x);
      switch (n.fn) {
        case UnaryFn::neg: return -v;
        case UnaryFn::sin: r = std::sin(v); break;
        case UnaryFn::cos: r = std::cos(v); break;
        case UnaryFn::exp: r = std::exp(v); break;
        case UnaryFn::log:
          if (v <= 0.0) throw EvalError("log of a nonpositive value", x);
          r = std::log(v);
          break;
        case UnaryFn::abs: return std::fabs(v);
        case UnaryFn::sqrt:
          if (v < 0.0) throw EvalError("sqrt of a negative value", x);
          r = std::sqrt(v);
          break;
        default: throw EvalError("bad unary function", x);
      }
      break;
    }
    case Kind::binary: {
      const double a = eval_node(*n.lhs, x);
      const double b = eval_node(*n.rhs, x);
      switch (n.op) {
        case BinaryOp::add: r = a + b; break;
        case BinaryOp::sub: r = a - b; break;
        case BinaryOp::mul: r = a * b; break;
        case BinaryOp::div:
          if (b == 0.0) throw EvalError("division by zero", x);
          r = a / b;
          break;
        case BinaryOp::pow:
          if (a == 0.0 && b < 0.0) throw EvalError("zero raised to a negative power", x);
          if (a < 0.0 && b != std::trunc(b))
            throw EvalError("negative base with a non-integer exponent", x);
          r = std::pow(a, b);
          break;
        default: throw EvalError("bad binary operator", x);
      }
      break;
    }
    default: throw EvalError("bad node", x);
  }
  if (!std::isfinite(r)) throw EvalError("non-finite value in evaluation", x);
  return r;
}

int precedence(const Expr::Node& n) {
  switch (n.kind) {
    case Kind::binary:
      switch (n.op) {
        case BinaryOp::add:
        case BinaryOp::sub: return 1;
        case BinaryOp::mul:
        case BinaryOp::div: return 2;
        case BinaryOp::pow: return 4;
      }
      return 1;
    case Kind::unary: return n.fn == UnaryFn::neg ? 3 : 5;  // calls bind like atoms
    default: return 5;
  }
}

void print_node(const Expr::Node& n, std::string& out);

void print_child(const Expr::Node& child, int min_prec, std::string& out) {
  const bool parens = precedence(child) < min_prec;
  if (parens) out += '(';
  print_node(child, out);
  if (parens) out += ')';
}

void print_node(const Expr::Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case Kind::variable: out += 'x'; return;
    case Kind::pi: out += "pi"; return;
    case Kind::unary: {
      if (n.fn == UnaryFn::neg) {
        out += '-';
        print_child(*n.lhs, 3, out);
        return;
      }
      switch (n.fn) {
        case UnaryFn::sin: out += "sin"; break;
        case UnaryFn::cos: out += "cos"; break;
        case UnaryFn::exp: out += "exp"; break;
        case UnaryFn::log: out += "log"; break;
        case UnaryFn::abs: out += "abs"; break;
        case UnaryFn::sqrt: out += "sqrt"; break;
        default: break;
      }
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
    }
    case Kind::binary: {
      const int prec = precedence(n);
      const char* op = "";
      switch (n.op) {
        case BinaryOp::add: op = " + "; break;
        case BinaryOp::sub: op = " - "; break;
        case BinaryOp::mul: op = " * "; break;
        case BinaryOp::div: op = " / "; break;
        case BinaryOp::pow: op = "^"; break;
      }
      if (n.op == BinaryOp::pow) {
        // right associative: parenthesize a pow/neg base, allow pow/neg exponent
        print_child(*n.lhs, prec + 1, out);
        out += op;
        print_child(*n.rhs, 3, out);
      } else {
        print_child(*n.lhs, prec, out);
        out += op;
        print_child(*n.rhs, prec + 1, out);
      }
      return;
    }
  }
}

std::size_t count_nodes(const Expr::Node& n) {
  std::size_t c = 1;
  if (n.lhs) c += count_nodes(*n.lhs);
  if (n.rhs) c += count_nodes(*n.rhs);
  return c;
}

std::size_t node_depth(const Expr::Node& n) {
  std::size_t d = 0;
  if (n.lhs) d = node_depth(*n.lhs);
  if (n.rhs) d = std::max(d, node_depth(*n.rhs));
  return d + 1;
}

bool nodes_equal(const Expr::Node& a, const Expr::Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::number: return a.value == b.value;
    case Kind::variable:
    case Kind::pi: return true;
    case Kind::unary: return a.fn == b.fn && nodes_equal(*a.lhs, *b.lhs);
    case Kind::binary: return a.op == b.op && nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
  }
  return false;
}

}  // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

double Expr::eval(double x) const { return eval_node(*root_, x); }

std::string Expr::to_string() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

std::size_t Expr::node_count() const noexcept { return count_nodes(*root_); }

std::size_t Expr::depth() const noexcept { return node_depth(*root_); }

bool structurally_equal(const Expr& a, const Expr& b) noexcept {
  return nodes_equal(*a.root_, *b.root_);
}

Expr parse_expr(std::string_view source) {
  if (source.empty()) throw ParseError("empty expression", 0);
  Parser p(source);
  NodePtr root = p.parse();
  if (node_depth(*root) > kMaxExprDepth) throw ParseError("depth limit exceeded", 0);
  return Expr(std::move(root), std::string(source));
}

}  // namespace hullbound
