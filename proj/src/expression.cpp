#include "certerr/expression.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace certerr {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Step };

struct ExprNode {
  Op op;
  double value = 0.0;  // Const: the value; Var: axis; Pow: exponent
  std::shared_ptr<const ExprNode> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(Op op, double value, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->value = value;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr constant(double v) { return make(Op::Const, v); }

bool const_value(const NodePtr& n, double* v) {
  if (n->op != Op::Const) return false;
  if (v) *v = n->value;
  return true;
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }

double eval_node(const ExprNode& n, const Eigen::Vector2d& p) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return p[static_cast<int>(n.value)];
    case Op::Add: return eval_node(*n.lhs, p) + eval_node(*n.rhs, p);
    case Op::Sub: return eval_node(*n.lhs, p) - eval_node(*n.rhs, p);
    case Op::Mul: return eval_node(*n.lhs, p) * eval_node(*n.rhs, p);
    case Op::Div: return eval_node(*n.lhs, p) / eval_node(*n.rhs, p);
    case Op::Pow: {
      const double base = eval_node(*n.lhs, p);
      const double e = n.value;
      if (e == std::floor(e) && std::abs(e) <= 64.0) {
        double r = 1.0, b = base;
        int k = static_cast<int>(std::abs(e));
        while (k > 0) {
          if (k & 1) r *= b;
          b *= b;
          k >>= 1;
        }
        return e < 0 ? 1.0 / r : r;
      }
      return std::pow(base, e);
    }
    case Op::Sin: return std::sin(eval_node(*n.lhs, p));
    case Op::Cos: return std::cos(eval_node(*n.lhs, p));
    case Op::Exp: return std::exp(eval_node(*n.lhs, p));
    case Op::Step: return eval_node(*n.lhs, p) > 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr div(NodePtr a, NodePtr b);

NodePtr add(NodePtr a, NodePtr b) {
  double va, vb;
  if (const_value(a, &va) && const_value(b, &vb)) return constant(va + vb);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make(Op::Add, 0.0, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
  double va, vb;
  if (const_value(a, &va) && const_value(b, &vb)) return constant(va - vb);
  if (is_const(b, 0.0)) return a;
  return make(Op::Sub, 0.0, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  double va, vb;
  if (const_value(a, &va) && const_value(b, &vb)) return constant(va * vb);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return make(Op::Mul, 0.0, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  double va, vb;
  if (const_value(b, &vb) && vb == 0.0) throw std::invalid_argument("division by constant zero");
  if (const_value(a, &va) && const_value(b, &vb)) return constant(va / vb);
  if (is_const(a, 0.0)) return constant(0.0);
  if (is_const(b, 1.0)) return a;
  return make(Op::Div, 0.0, std::move(a), std::move(b));
}

NodePtr pow_node(NodePtr base, double e) {
  double vb;
  if (e == 0.0) return constant(1.0);
  if (e == 1.0) return base;
  if (const_value(base, &vb)) return constant(std::pow(vb, e));
  return make(Op::Pow, e, std::move(base));
}

NodePtr diff_node(const NodePtr& n, int axis) {
  switch (n->op) {
    case Op::Const: return constant(0.0);
    case Op::Var: return constant(static_cast<int>(n->value) == axis ? 1.0 : 0.0);
    case Op::Add: return add(diff_node(n->lhs, axis), diff_node(n->rhs, axis));
    case Op::Sub: return sub(diff_node(n->lhs, axis), diff_node(n->rhs, axis));
    case Op::Mul:
      return add(mul(diff_node(n->lhs, axis), n->rhs), mul(n->lhs, diff_node(n->rhs, axis)));
    case Op::Div:
      return div(sub(mul(diff_node(n->lhs, axis), n->rhs), mul(n->lhs, diff_node(n->rhs, axis))),
                 pow_node(n->rhs, 2.0));
    case Op::Pow:
      return mul(mul(constant(n->value), pow_node(n->lhs, n->value - 1.0)),
                 diff_node(n->lhs, axis));
    case Op::Sin: return mul(make(Op::Cos, 0.0, n->lhs), diff_node(n->lhs, axis));
    case Op::Cos:
      return mul(constant(-1.0), mul(make(Op::Sin, 0.0, n->lhs), diff_node(n->lhs, axis)));
    case Op::Exp: return mul(make(Op::Exp, 0.0, n->lhs), diff_node(n->lhs, axis));
    case Op::Step: throw std::domain_error("step() is not differentiable");
  }
  return constant(0.0);
}

void print_node(const ExprNode& n, std::ostringstream& out) {
  auto paren = [&](const NodePtr& c) {
    out << '(';
    print_node(*c, out);
    out << ')';
  };
  switch (n.op) {
    case Op::Const: out << n.value; break;
    case Op::Var: out << (static_cast<int>(n.value) == 0 ? 'x' : 'y'); break;
    case Op::Add: paren(n.lhs); out << " + "; paren(n.rhs); break;
    case Op::Sub: paren(n.lhs); out << " - "; paren(n.rhs); break;
    case Op::Mul: paren(n.lhs); out << "*"; paren(n.rhs); break;
    case Op::Div: paren(n.lhs); out << "/"; paren(n.rhs); break;
    case Op::Pow: paren(n.lhs); out << "^" << n.value; break;
    case Op::Sin: out << "sin"; paren(n.lhs); break;
    case Op::Cos: out << "cos"; paren(n.lhs); break;
    case Op::Exp: out << "exp"; paren(n.lhs); break;
    case Op::Step: out << "step"; paren(n.lhs); break;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("expression parse error at offset " + std::to_string(pos_) +
                                ": " + what + " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = add(lhs, term());
      else if (accept('-')) lhs = sub(lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = mul(lhs, unary());
      else if (accept('/')) lhs = div(lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return sub(constant(0.0), unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      NodePtr e = unary();
      double v;
      if (!const_value(e, &v)) fail("exponent must be a numeric constant");
      return pow_node(base, v);
    }
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character");
  }

  NodePtr number() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belonged to something else
      }
    }
    return constant(std::stod(std::string(text_.substr(start, pos_ - start))));
  }

  NodePtr identifier() {
    size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "x") return make(Op::Var, 0.0);
    if (name == "y") return make(Op::Var, 1.0);
    if (name == "sin" || name == "cos" || name == "exp" || name == "step") {
      if (!accept('(')) fail("expected '(' after function name");
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      if (name == "sin") return make(Op::Sin, 0.0, arg);
      if (name == "cos") return make(Op::Cos, 0.0, arg);
      if (name == "exp") return make(Op::Exp, 0.0, arg);
      return make(Op::Step, 0.0, arg);
    }
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

Expr::Expr() : node_(constant(0.0)) {}
Expr::Expr(double value) : node_(constant(value)) {}
Expr::Expr(int value) : node_(constant(value)) {}

Expr Expr::x() { return Expr(make(Op::Var, 0.0)); }
Expr Expr::y() { return Expr(make(Op::Var, 1.0)); }

double Expr::operator()(const Eigen::Vector2d& point) const { return eval_node(*node_, point); }

Expr Expr::diff(int axis) const { return Expr(diff_node(node_, axis)); }

bool Expr::is_constant(double* value) const { return const_value(node_, value); }
bool Expr::is_zero() const { return is_const(node_, 0.0); }

std::string Expr::to_string() const {
  std::ostringstream out;
  print_node(*node_, out);
  return out.str();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(add(a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(sub(a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(mul(a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(div(a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(sub(constant(0.0), a.node_)); }
Expr pow(const Expr& base, double exponent) { return Expr(pow_node(base.node_, exponent)); }
Expr sin(const Expr& a) { return Expr(make(Op::Sin, 0.0, a.node_)); }
Expr cos(const Expr& a) { return Expr(make(Op::Cos, 0.0, a.node_)); }
Expr exp(const Expr& a) { return Expr(make(Op::Exp, 0.0, a.node_)); }
Expr step(const Expr& a) { return Expr(make(Op::Step, 0.0, a.node_)); }

Expr parse_expression(std::string_view text) { return Expr(Parser(text).parse()); }

}  // namespace certerr
