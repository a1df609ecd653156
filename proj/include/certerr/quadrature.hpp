#pragma once

#include <Eigen/Dense>

namespace certerr {

/// Quadrature rule on a reference element: the unit interval [0,1]
/// (points stored with zero y-component) or the unit triangle
/// {(0,0),(1,0),(0,1)}. Weights are positive and sum to the reference
/// measure (1 for the interval, 1/2 for the triangle).
struct QuadratureRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> points;
  Eigen::VectorXd weights;
  int degree = 0;  // all polynomials of this total degree are integrated exactly

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre rule on [0,1], exact for polynomials of the requested
/// degree. Supported up to degree 63. Throws std::invalid_argument beyond.
const QuadratureRule& interval_rule(int degree);

/// Conical-product rule on the reference triangle, exact for total degree
/// `degree`. Supported up to degree 25. Throws std::invalid_argument beyond.
const QuadratureRule& triangle_rule(int degree);

/// Dispatch on element dimension (1 -> interval, 2 -> triangle).
const QuadratureRule& cell_rule(int dim, int degree);

}  // namespace certerr
