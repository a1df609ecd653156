#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>

#include "certerr/mesh.hpp"

namespace certerr {

using PointFn = std::function<double(const Eigen::Vector2d&)>;
using PointVecFn = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// Continuous piecewise-linear scalar field with one dof per vertex.
/// With zero_boundary set, every boundary-vertex dof is 0 and the trace on
/// the domain boundary vanishes identically.
struct ScalarField {
  const Mesh* mesh = nullptr;
  Eigen::VectorXd dofs;
  bool zero_boundary = false;

  double value(int cell, const Eigen::Vector2d& x) const {
    const Eigen::Vector3d l = mesh->barycentric(cell, x);
    const auto& c = mesh->cells[cell];
    double v = dofs[c[0]] * l[0] + dofs[c[1]] * l[1];
    if (mesh->dim == 2) v += dofs[c[2]] * l[2];
    return v;
  }

  /// Cellwise-constant gradient.
  Eigen::Vector2d gradient(int cell) const {
    const auto& c = mesh->cells[cell];
    Eigen::Vector2d g = dofs[c[0]] * mesh->barycentric_gradient(cell, 0) +
                        dofs[c[1]] * mesh->barycentric_gradient(cell, 1);
    if (mesh->dim == 2) g += dofs[c[2]] * mesh->barycentric_gradient(cell, 2);
    return g;
  }
};

/// H(div)-conforming lowest-order facet-flux field: one dof per facet,
/// the total flux across the facet with respect to its fixed normal.
/// 1D fields are continuous piecewise-linear in the facet (vertex) dofs.
struct FluxField {
  const Mesh* mesh = nullptr;
  Eigen::VectorXd dofs;

  Eigen::Vector2d value(int cell, const Eigen::Vector2d& x) const {
    const auto& c = mesh->cells[cell];
    const auto& cf = mesh->cell_facets[cell];
    if (mesh->dim == 1) {
      const Eigen::Vector3d l = mesh->barycentric(cell, x);
      return {dofs[cf[0]] * l[0] + dofs[cf[1]] * l[1], 0.0};
    }
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    const double two_area = 2.0 * mesh->cell_measure[cell];
    for (int i = 0; i < 3; ++i)
      v += dofs[cf[i]] * mesh->cell_facet_sign[cell][i] * (x - mesh->vertices[c[i]]) / two_area;
    return v;
  }

  /// Cellwise-constant divergence (net outward flux over cell measure).
  double divergence(int cell) const {
    const auto& cf = mesh->cell_facets[cell];
    double net = 0.0;
    const int nf = mesh->dim + 1;
    for (int i = 0; i < nf; ++i) net += dofs[cf[i]] * mesh->cell_facet_sign[cell][i];
    return net / mesh->cell_measure[cell];
  }
};

/// Vertex interpolation: dof = g(vertex); zero_boundary forces boundary
/// dofs to 0. Throws std::domain_error on a non-finite vertex value.
ScalarField interpolate_scalar(const Mesh& mesh, const PointFn& g, bool zero_boundary);

/// Facet-flux interpolation: dof = facet measure * (G . n) at the facet
/// midpoint (1D: the value of G at the vertex). Exact on the flux space.
FluxField interpolate_flux(const Mesh& mesh, const PointVecFn& G);

/// Uniform [-1,1] interior vertex dofs, zero boundary. Deterministic for a
/// given generator state across platforms.
ScalarField random_zero_boundary_field(const Mesh& mesh, std::mt19937_64& rng);

/// Uniform [-1,1] facet dofs scaled by facet measure.
FluxField random_flux_field(const Mesh& mesh, std::mt19937_64& rng);

/// One double in [-1, 1) from the top 53 bits of the generator.
double uniform_pm1(std::mt19937_64& rng);

}  // namespace certerr
