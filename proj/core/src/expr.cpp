#include "skewsim/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "skewsim/special.hpp"

namespace skewsim {

struct Expression::Node {
  enum class Kind { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Sqrt, Exp, Log, Piece };
  Kind kind = Kind::Number;
  double value = 0.0;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double x, bool left) const {
    switch (kind) {
      case Kind::Number: return value;
      case Kind::Var: return x;
      case Kind::Add: return args[0]->eval(x, left) + args[1]->eval(x, left);
      case Kind::Sub: return args[0]->eval(x, left) - args[1]->eval(x, left);
      case Kind::Mul: return args[0]->eval(x, left) * args[1]->eval(x, left);
      case Kind::Div: return args[0]->eval(x, left) / args[1]->eval(x, left);
      case Kind::Pow: return std::pow(args[0]->eval(x, left), args[1]->eval(x, left));
      case Kind::Neg: return -args[0]->eval(x, left);
      case Kind::Sin: return std::sin(args[0]->eval(x, left));
      case Kind::Cos: return std::cos(args[0]->eval(x, left));
      case Kind::Sqrt: return std::sqrt(args[0]->eval(x, left));
      case Kind::Exp: return std::exp(args[0]->eval(x, left));
      case Kind::Log: return std::log(args[0]->eval(x, left));
      case Kind::Piece: {
        const double c = value;
        const bool upper = left ? x > c : x >= c;
        return upper ? args[0]->eval(x, left) : args[1]->eval(x, left);
      }
    }
    return std::nan("");
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind k, std::vector<NodePtr> args = {}, double value = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->args = std::move(args);
  n->value = value;
  return n;
}

bool uses_x(const NodePtr& n) {
  if (n->kind == Kind::Var || n->kind == Kind::Piece) return true;
  for (const auto& a : n->args) {
    if (uses_x(a)) return true;
  }
  return false;
}

class Parser {
public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExprSyntaxError("expression '" + s_ + "': " + what + " at column " +
                          std::to_string(pos_ + 1));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    return s_.substr(start, pos_ - start);
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) {
        n = make(Kind::Add, {n, term()});
      } else if (accept('-')) {
        n = make(Kind::Sub, {n, term()});
      } else {
        return n;
      }
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) {
        n = make(Kind::Mul, {n, unary()});
      } else if (accept('/')) {
        n = make(Kind::Div, {n, unary()});
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::Neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::Pow, {base, unary()});
    return base;
  }

  NodePtr number() {
    skip();
    double v = 0.0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return make(Kind::Number, {}, v);
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      NodePtr n = expr();
      expect(')');
      return n;
    }
    const std::size_t at = pos_;
    const std::string id = identifier();
    if (id.empty()) fail("unexpected '" + std::string(1, c) + "'");
    if (id == "x") return make(Kind::Var);
    if (id == "pi") return make(Kind::Number, {}, kPi);
    if (id == "piecewise") return piecewise();
    Kind k;
    if (id == "sin") {
      k = Kind::Sin;
    } else if (id == "cos") {
      k = Kind::Cos;
    } else if (id == "sqrt") {
      k = Kind::Sqrt;
    } else if (id == "exp") {
      k = Kind::Exp;
    } else if (id == "log") {
      k = Kind::Log;
    } else {
      pos_ = at;
      fail("unknown name '" + id + "'");
    }
    expect('(');
    NodePtr arg = expr();
    expect(')');
    return make(k, {arg});
  }

  NodePtr piecewise() {
    expect('(');
    if (identifier() != "x") fail("piecewise condition must start with x");
    expect('>');
    expect('=');
    NodePtr threshold = expr();
    if (uses_x(threshold)) fail("piecewise threshold must be constant");
    expect('?');
    NodePtr hi = expr();
    expect(':');
    NodePtr lo = expr();
    expect(')');
    return make(Kind::Piece, {hi, lo}, threshold->eval(0.0, false));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& source) {
  Expression e;
  e.source_ = source;
  Parser p(e.source_);
  e.root_ = p.parse_all();
  return e;
}

double Expression::eval(double x, bool left) const {
  if (!root_) throw DomainError("empty expression");
  return root_->eval(x, left);
}

}  // namespace skewsim
