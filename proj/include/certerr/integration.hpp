#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "certerr/mesh.hpp"
#include "certerr/quadrature.hpp"

namespace certerr {

using CellScalarFn = std::function<double(int cell, const Eigen::Vector2d&)>;
using CellVectorFn = std::function<Eigen::Vector2d(int cell, const Eigen::Vector2d&)>;
using CellMatrixFn = std::function<Eigen::Matrix2d(int cell, const Eigen::Vector2d&)>;

/// Integration region: the whole mesh, the reaction-free part, its
/// complement, or a single cell. The Omega0/OmegaC variants carry per-cell
/// classification flags (see DomainSplit).
struct Region {
  enum class Kind { All, Omega0, OmegaC, Cell };
  Kind kind = Kind::All;
  int cell = -1;
  const std::vector<char>* omega0 = nullptr;

  static Region all() { return {}; }
  static Region omega_0(const std::vector<char>& flags) {
    return {Kind::Omega0, -1, &flags};
  }
  static Region omega_c(const std::vector<char>& flags) {
    return {Kind::OmegaC, -1, &flags};
  }
  static Region single_cell(int cell) { return {Kind::Cell, cell, nullptr}; }

  bool contains(int c) const;
};

/// Quadrature sum over the region's cells in ascending cell order.
double integrate(const Mesh& mesh, const CellScalarFn& integrand, int degree,
                 Region region = Region::all());

/// Weights below this value abort integration: the functional weights
/// c^-1, (c - div b)^-1, chat^-1 must stay uniformly positive, and a tiny
/// or negative weight signals an invalid coefficient regime.
inline constexpr double kMinWeight = 1e-14;

double weighted_norm_sq(const Mesh& mesh, const CellScalarFn& expr, const CellScalarFn& weight,
                        Region region, int degree);
double weighted_norm_sq(const Mesh& mesh, const CellVectorFn& expr, const CellMatrixFn& weight,
                        Region region, int degree);

/// sqrt(integral of weight * |expr|^2) over the region.
double weighted_norm(const Mesh& mesh, const CellScalarFn& expr, const CellScalarFn& weight,
                     Region region, int degree);
double weighted_norm(const Mesh& mesh, const CellVectorFn& expr, const CellMatrixFn& weight,
                     Region region, int degree);

/// Lifts a point function to a cell-indexed integrand.
template <typename Fn>
CellScalarFn cellwise(Fn f) {
  return [f = std::move(f)](int, const Eigen::Vector2d& x) { return f(x); };
}

}  // namespace certerr
