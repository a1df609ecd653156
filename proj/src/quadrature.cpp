#include "certerr/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace certerr {

namespace {

struct GaussPoints {
  Eigen::VectorXd nodes;    // on [0,1]
  Eigen::VectorXd weights;  // sum = integral of the weight over [0,1]
};

// Golub-Welsch: nodes/weights of an n-point Gauss rule from the symmetric
// tridiagonal recurrence matrix (diag, subdiag) of the orthogonal
// polynomials; mu0 is the total mass of the weight function.
GaussPoints golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& subdiag, double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  const int n = static_cast<int>(diag.size());
  GaussPoints g;
  g.nodes = es.eigenvalues();  // ascending
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    g.weights[i] = mu0 * v0 * v0;
  }
  return g;
}

// n-point Gauss-Legendre on [0,1], exact for degree 2n-1.
GaussPoints gauss_legendre01(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  GaussPoints g = golub_welsch(diag, sub, 2.0);
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = 0.5 * (g.nodes[i] + 1.0);
    g.weights[i] *= 0.5;
  }
  return g;
}

// n-point Gauss-Jacobi with weight (1-t) on [0,1], exact for degree 2n-1.
GaussPoints gauss_jacobi10(int n) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
  diag[0] = -1.0 / 3.0;
  for (int k = 1; k < n; ++k) {
    diag[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
    sub[k - 1] = std::sqrt(k * (k + 1.0)) / (2.0 * k + 1.0);
  }
  GaussPoints g = golub_welsch(diag, sub, 2.0);
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = 0.5 * (g.nodes[i] + 1.0);
    g.weights[i] *= 0.25;  // (1/2)^(alpha+beta+1) with alpha=1, beta=0
  }
  return g;
}

QuadratureRule make_interval_rule(int degree) {
  const int n = degree / 2 + 1;
  GaussPoints g = gauss_legendre01(n);
  QuadratureRule rule;
  rule.degree = degree;
  rule.points.resize(n, 2);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points(i, 0) = g.nodes[i];
    rule.points(i, 1) = 0.0;
    rule.weights[i] = g.weights[i];
  }
  return rule;
}

// Conical product of Gauss-Legendre (xi) and Gauss-Jacobi (eta) points:
// x = xi*(1-eta), y = eta maps [0,1]^2 onto the triangle with Jacobian
// (1-eta), which is exactly the Jacobi weight.
QuadratureRule make_triangle_rule(int degree) {
  const int n = degree / 2 + 1;
  GaussPoints gl = gauss_legendre01(n);
  GaussPoints gj = gauss_jacobi10(n);
  QuadratureRule rule;
  rule.degree = degree;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  int k = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i, ++k) {
      rule.points(k, 0) = gl.nodes[i] * (1.0 - gj.nodes[j]);
      rule.points(k, 1) = gj.nodes[j];
      rule.weights[k] = gl.weights[i] * gj.weights[j];
    }
  }
  return rule;
}

template <typename Maker>
const QuadratureRule& cached_rule(int degree, int max_degree, const char* what, Maker make) {
  if (degree < 1 || degree > max_degree)
    throw std::invalid_argument(std::string(what) + " quadrature of degree " +
                                std::to_string(degree) + " is unavailable");
  static std::map<std::pair<const char*, int>, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.try_emplace({what, degree});
  if (inserted) it->second = make(degree);
  return it->second;
}

}  // namespace

const QuadratureRule& interval_rule(int degree) {
  return cached_rule(degree, 63, "interval", make_interval_rule);
}

const QuadratureRule& triangle_rule(int degree) {
  return cached_rule(degree, 25, "triangle", make_triangle_rule);
}

const QuadratureRule& cell_rule(int dim, int degree) {
  if (dim == 1) return interval_rule(degree);
  if (dim == 2) return triangle_rule(degree);
  throw std::invalid_argument("unsupported element dimension");
}

}  // namespace certerr
