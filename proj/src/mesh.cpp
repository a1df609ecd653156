#include "certerr/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace certerr {

namespace {

double cross2(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  return u.x() * v.y() - u.y() * v.x();
}

double cell_area(const std::vector<Eigen::Vector2d>& verts, const std::array<int, 3>& c) {
  const Eigen::Vector2d& a = verts[c[0]];
  return 0.5 * cross2(verts[c[1]] - a, verts[c[2]] - a);
}

// Fills facets, incidence, measures and boundary flags from dim/vertices/cells.
void finalize(Mesh& mesh) {
  const int nc = mesh.num_cells();
  mesh.facets.clear();
  mesh.cell_facets.assign(nc, {-1, -1, -1});
  mesh.cell_facet_sign.assign(nc, {0.0, 0.0, 0.0});
  mesh.cell_measure.assign(nc, 0.0);
  mesh.cell_diam.assign(nc, 0.0);
  mesh.vertex_boundary.assign(mesh.num_vertices(), 0);

  if (mesh.dim == 1) {
    for (int k = 0; k < nc; ++k) {
      const double h = mesh.vertices[mesh.cells[k][1]].x() - mesh.vertices[mesh.cells[k][0]].x();
      if (!(h > 0.0)) throw std::invalid_argument("1D cell with non-positive length");
      mesh.cell_measure[k] = h;
      mesh.cell_diam[k] = h;
    }
    // One facet per vertex, +x normal. Vertex order gives the facet order.
    std::vector<std::array<int, 2>> touching(mesh.num_vertices(), {-1, -1});  // {left cell, right cell}
    for (int k = 0; k < nc; ++k) {
      touching[mesh.cells[k][0]][1] = k;  // cell to the right of its first vertex
      touching[mesh.cells[k][1]][0] = k;  // cell to the left of its second vertex
    }
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      Facet f;
      f.vertices = {v, -1};
      const int left = touching[v][0], right = touching[v][1];
      if (left < 0 && right < 0) throw std::invalid_argument("isolated vertex");
      f.boundary = (left < 0 || right < 0);
      f.cell_minus = left >= 0 ? left : right;
      f.cell_plus = (left >= 0 && right >= 0) ? right : -1;
      if (f.cell_plus >= 0 && f.cell_minus > f.cell_plus)
        throw std::logic_error("1D cells are not ordered left to right");
      mesh.facets.push_back(f);
      if (f.boundary) mesh.vertex_boundary[v] = 1;
      if (left >= 0) {
        mesh.cell_facets[left][1] = v;
        mesh.cell_facet_sign[left][1] = 1.0;  // +x normal is outward at the right end
      }
      if (right >= 0) {
        mesh.cell_facets[right][0] = v;
        mesh.cell_facet_sign[right][0] = -1.0;
      }
    }
    return;
  }

  for (int k = 0; k < nc; ++k) {
    const double area = cell_area(mesh.vertices, mesh.cells[k]);
    if (!(area > 0.0)) throw std::invalid_argument("triangle with non-positive area");
    mesh.cell_measure[k] = area;
    double diam = 0.0;
    for (int i = 0; i < 3; ++i)
      diam = std::max(diam, (mesh.vertices[mesh.cells[k][i]] -
                             mesh.vertices[mesh.cells[k][(i + 1) % 3]]).norm());
    mesh.cell_diam[k] = diam;
  }

  // Edge -> (cell, local facet) incidences, deterministically ordered.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
  for (int k = 0; k < nc; ++k) {
    for (int i = 0; i < 3; ++i) {
      const int a = mesh.cells[k][(i + 1) % 3], b = mesh.cells[k][(i + 2) % 3];
      edges[{std::min(a, b), std::max(a, b)}].push_back({k, i});
    }
  }
  for (auto& [key, inc] : edges) {
    if (inc.size() > 2) throw std::invalid_argument("non-conforming mesh: edge shared by >2 cells");
    std::sort(inc.begin(), inc.end());
    Facet f;
    f.vertices = {key.first, key.second};
    f.measure = (mesh.vertices[key.second] - mesh.vertices[key.first]).norm();
    f.boundary = inc.size() == 1;
    f.cell_minus = inc[0].first;
    f.cell_plus = f.boundary ? -1 : inc[1].first;
    // Outward normal of cell_minus (CCW cells: rotate the opposite-vertex edge).
    {
      const auto& c = mesh.cells[f.cell_minus];
      const int i = inc[0].second;
      const Eigen::Vector2d t =
          mesh.vertices[c[(i + 2) % 3]] - mesh.vertices[c[(i + 1) % 3]];
      f.normal = Eigen::Vector2d(t.y(), -t.x()).normalized();
    }
    const int fid = static_cast<int>(mesh.facets.size());
    mesh.facets.push_back(f);
    mesh.cell_facets[inc[0].first][inc[0].second] = fid;
    mesh.cell_facet_sign[inc[0].first][inc[0].second] = 1.0;
    if (!f.boundary) {
      mesh.cell_facets[inc[1].first][inc[1].second] = fid;
      mesh.cell_facet_sign[inc[1].first][inc[1].second] = -1.0;
    } else {
      mesh.vertex_boundary[key.first] = 1;
      mesh.vertex_boundary[key.second] = 1;
    }
  }
}

}  // namespace

double Mesh::total_measure() const {
  double sum = 0.0;
  for (double m : cell_measure) sum += m;
  return sum;
}

Eigen::Vector2d Mesh::map_to_cell(int cell, const Eigen::Vector2d& ref) const {
  const auto& c = cells[cell];
  const Eigen::Vector2d& a = vertices[c[0]];
  if (dim == 1) return a + ref.x() * (vertices[c[1]] - a);
  return a + ref.x() * (vertices[c[1]] - a) + ref.y() * (vertices[c[2]] - a);
}

Eigen::Vector3d Mesh::barycentric(int cell, const Eigen::Vector2d& x) const {
  const auto& c = cells[cell];
  const Eigen::Vector2d& a = vertices[c[0]];
  if (dim == 1) {
    const double t = (x.x() - a.x()) / (vertices[c[1]].x() - a.x());
    return {1.0 - t, t, 0.0};
  }
  const Eigen::Vector2d u = vertices[c[1]] - a, v = vertices[c[2]] - a, r = x - a;
  const double det = cross2(u, v);
  const double l1 = cross2(r, v) / det;
  const double l2 = cross2(u, r) / det;
  return {1.0 - l1 - l2, l1, l2};
}

Eigen::Vector2d Mesh::barycentric_gradient(int cell, int local_vertex) const {
  const auto& c = cells[cell];
  if (dim == 1) {
    const double h = vertices[c[1]].x() - vertices[c[0]].x();
    return {local_vertex == 0 ? -1.0 / h : 1.0 / h, 0.0};
  }
  // grad(lambda_i) is the inward rotation of the opposite edge over 2|T|.
  const Eigen::Vector2d t =
      vertices[c[(local_vertex + 2) % 3]] - vertices[c[(local_vertex + 1) % 3]];
  return Eigen::Vector2d(-t.y(), t.x()) / (2.0 * cell_measure[cell]);
}

Mesh build_interval_mesh(double a, double b, int n) {
  if (!(a < b)) throw std::invalid_argument("interval mesh requires a < b");
  if (n < 1) throw std::invalid_argument("interval mesh requires n >= 1");
  Mesh mesh;
  mesh.dim = 1;
  mesh.vertices.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double x = i == n ? b : a + (b - a) * (static_cast<double>(i) / n);
    mesh.vertices.push_back({x, 0.0});
  }
  for (int i = 0; i < n; ++i) mesh.cells.push_back({i, i + 1, -1});
  finalize(mesh);
  return mesh;
}

Mesh build_unit_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("unit square mesh requires n >= 1");
  Mesh mesh;
  mesh.dim = 2;
  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Both triangles use the square's diagonal as their refinement edge.
      mesh.cells.push_back({vid(i + 1, j + 1), vid(i, j), vid(i + 1, j)});
      mesh.cells.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  finalize(mesh);
  return mesh;
}

namespace {

struct Bisector {
  explicit Bisector(const Mesh& mesh) : verts(mesh.vertices) {
    for (const auto& c : mesh.cells) add_cell(c);
  }

  std::vector<Eigen::Vector2d> verts;
  std::vector<std::array<int, 3>> cells_;
  std::vector<char> alive;
  std::map<std::pair<int, int>, std::vector<int>> edge_cells;
  std::map<std::pair<int, int>, int> midpoint;

  static std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

  int add_cell(const std::array<int, 3>& c) {
    const int id = static_cast<int>(cells_.size());
    cells_.push_back(c);
    alive.push_back(1);
    for (int i = 0; i < 3; ++i) edge_cells[key(c[(i + 1) % 3], c[(i + 2) % 3])].push_back(id);
    return id;
  }

  void kill(int id) {
    alive[id] = 0;
    const auto& c = cells_[id];
    for (int i = 0; i < 3; ++i) {
      auto& list = edge_cells[key(c[(i + 1) % 3], c[(i + 2) % 3])];
      list.erase(std::remove(list.begin(), list.end(), id), list.end());
    }
  }

  int neighbor_across(int id, std::pair<int, int> e) const {
    auto it = edge_cells.find(e);
    if (it == edge_cells.end()) return -1;
    for (int other : it->second)
      if (other != id) return other;
    return -1;
  }

  std::pair<int, int> ref_edge(int id) const { return key(cells_[id][0], cells_[id][1]); }

  int midpoint_of(std::pair<int, int> e) {
    auto [it, inserted] = midpoint.try_emplace(e, static_cast<int>(verts.size()));
    if (inserted) verts.push_back(0.5 * (verts[e.first] + verts[e.second]));
    return it->second;
  }

  // Splits cell (a,b,c) with refinement edge (a,b) into (c,a,m) and (b,c,m).
  void split(int id, int m) {
    const auto c = cells_[id];
    kill(id);
    add_cell({c[2], c[0], m});
    add_cell({c[1], c[2], m});
  }

  void ensure_split(int id, int depth = 0) {
    if (depth > 64) throw std::runtime_error("bisection closure did not terminate");
    if (!alive[id]) return;
    const auto e = ref_edge(id);
    for (;;) {
      const int nb = neighbor_across(id, e);
      if (nb >= 0 && ref_edge(nb) != e) {
        ensure_split(nb, depth + 1);
        continue;  // the new neighbor across e has e as its refinement edge
      }
      const int m = midpoint_of(e);
      split(id, m);
      if (nb >= 0) split(nb, m);
      return;
    }
  }
};

}  // namespace

Mesh refine(const Mesh& mesh, const std::vector<int>& marked) {
  for (int id : marked)
    if (id < 0 || id >= mesh.num_cells())
      throw std::invalid_argument("refine: cell index out of range");

  Mesh out;
  out.dim = mesh.dim;

  if (mesh.dim == 1) {
    out.vertices = mesh.vertices;
    std::set<int> mark(marked.begin(), marked.end());
    for (int k = 0; k < mesh.num_cells(); ++k) {
      const auto& c = mesh.cells[k];
      if (mark.count(k)) {
        const int m = static_cast<int>(out.vertices.size());
        out.vertices.push_back(0.5 * (mesh.vertices[c[0]] + mesh.vertices[c[1]]));
        out.cells.push_back({c[0], m, -1});
        out.cells.push_back({m, c[1], -1});
      } else {
        out.cells.push_back(c);
      }
    }
    finalize(out);
    return out;
  }

  Bisector bis(mesh);
  for (int id : marked) bis.ensure_split(id);
  out.vertices = std::move(bis.verts);
  for (int k = 0; k < static_cast<int>(bis.cells_.size()); ++k)
    if (bis.alive[k]) out.cells.push_back(bis.cells_[k]);
  finalize(out);
  return out;
}

std::string dump_mesh(const Mesh& mesh) {
  std::ostringstream out;
  char buf[64];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << mesh.dim << ' ' << mesh.num_vertices() << ' ' << mesh.num_cells() << ' '
      << mesh.num_facets() << '\n';
  for (const auto& v : mesh.vertices) {
    out << num(v.x());
    if (mesh.dim == 2) out << ' ' << num(v.y());
    out << '\n';
  }
  for (const auto& c : mesh.cells) {
    out << c[0] << ' ' << c[1];
    if (mesh.dim == 2) out << ' ' << c[2];
    out << '\n';
  }
  for (const auto& f : mesh.facets) {
    out << f.vertices[0];
    if (mesh.dim == 2) out << ' ' << f.vertices[1];
    out << ' ' << (f.boundary ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace certerr
