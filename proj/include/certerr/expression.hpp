#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <string>
#include <string_view>

namespace certerr {

struct ExprNode;

/// Immutable closed-form expression in the variables x and y.
///
/// The supported operations are +, -, *, /, ^ (constant exponent), sin,
/// cos, exp and step (unit step, 1 where the argument is positive).
/// Differentiation is exact on this grammar except for step, which is
/// evaluate-only and rejects diff().
class Expr {
 public:
  Expr();  // the constant 0
  Expr(double value);
  Expr(int value);

  static Expr x();
  static Expr y();

  double operator()(const Eigen::Vector2d& point) const;
  Expr diff(int axis) const;  // axis 0 = x, 1 = y

  bool is_constant(double* value = nullptr) const;
  bool is_zero() const;
  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, double exponent);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr step(const Expr& a);

  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  const ExprNode& node() const { return *node_; }

 private:
  std::shared_ptr<const ExprNode> node_;
};

/// Parses the experiment-config expression grammar:
///   +, -, *, /, ^, sin, cos, exp, x, y, numeric literals, parentheses.
/// Throws std::invalid_argument naming the offending position on malformed input.
Expr parse_expression(std::string_view text);

/// Symmetric 2x2 matrix-valued closed form (diffusion coefficient).
/// 1D problems use scalar(a): diag(a, 1), so vector weights act as `a`
/// on the x-component and leave the padded y-component alone.
struct MatrixExpr {
  Expr a00{1.0}, a01{0.0}, a11{1.0};

  static MatrixExpr identity() { return MatrixExpr{}; }
  static MatrixExpr scalar(Expr a) { return MatrixExpr{std::move(a), Expr{0.0}, Expr{1.0}}; }
  static MatrixExpr diagonal(Expr a, Expr d) { return MatrixExpr{std::move(a), Expr{0.0}, std::move(d)}; }

  Eigen::Matrix2d operator()(const Eigen::Vector2d& p) const {
    Eigen::Matrix2d m;
    const double off = a01(p);
    m << a00(p), off, off, a11(p);
    return m;
  }
};

using VectorExpr = std::array<Expr, 2>;

inline Eigen::Vector2d eval(const VectorExpr& v, const Eigen::Vector2d& p) {
  return {v[0](p), v[1](p)};
}

}  // namespace certerr
