#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace certerr {

/// Mesh facet: a vertex in 1D, an edge in 2D. Carries a fixed unit normal:
/// +x for every 1D facet; in 2D the outward normal of cell_minus, which for
/// interior facets points from the lower-indexed to the higher-indexed cell.
struct Facet {
  std::array<int, 2> vertices{-1, -1};  // 1D uses only the first entry
  bool boundary = false;
  int cell_minus = -1;  // lower-indexed adjacent cell
  int cell_plus = -1;   // higher-indexed adjacent cell, -1 on the boundary
  Eigen::Vector2d normal{1.0, 0.0};
  double measure = 1.0;  // edge length in 2D, 1 by convention in 1D
};

/// Conforming simplicial mesh of an interval (dim 1) or a polygonal 2D
/// domain. Immutable after construction; refine() returns a new mesh.
///
/// 2D cells are stored counterclockwise with the bisection refinement edge
/// as (v0, v1); local facet i is opposite local vertex i.
struct Mesh {
  int dim = 1;
  std::vector<Eigen::Vector2d> vertices;  // 1D points padded with y = 0
  std::vector<std::array<int, 3>> cells;  // 1D: {left, right, -1}
  std::vector<Facet> facets;

  std::vector<std::array<int, 3>> cell_facets;        // 1D: {left, right, -1}
  std::vector<std::array<double, 3>> cell_facet_sign; // +1 if facet normal is outward
  std::vector<double> cell_measure;
  std::vector<double> cell_diam;
  std::vector<char> vertex_boundary;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_facets() const { return static_cast<int>(facets.size()); }
  int vertices_per_cell() const { return dim + 1; }

  double total_measure() const;

  /// Affine map from the reference element (unit interval / unit triangle)
  /// into the given cell.
  Eigen::Vector2d map_to_cell(int cell, const Eigen::Vector2d& ref) const;

  /// Barycentric coordinates of a physical point with respect to a cell.
  /// 1D returns (1-t, t, 0).
  Eigen::Vector3d barycentric(int cell, const Eigen::Vector2d& x) const;

  /// Gradient of the barycentric (P1 hat) function of a cell's local vertex.
  Eigen::Vector2d barycentric_gradient(int cell, int local_vertex) const;
};

/// Uniform mesh of (a, b) with n cells. Endpoints are represented exactly.
Mesh build_interval_mesh(double a, double b, int n);

/// n x n grid of squares, each split into two triangles by the diagonal
/// from (i,j) to (i+1,j+1); the diagonal is the refinement edge of both.
Mesh build_unit_square_mesh(int n);

/// Bisects the marked cells (1D: midpoint split; 2D: newest-vertex
/// bisection) and closes the mesh so the result is conforming.
Mesh refine(const Mesh& mesh, const std::vector<int>& marked);

/// ASCII dump: "dim nv nc nf", vertex coordinate lines, cell vertex lines,
/// facet lines "v0 [v1] tag" (tag 1 = boundary).
std::string dump_mesh(const Mesh& mesh);

}  // namespace certerr
