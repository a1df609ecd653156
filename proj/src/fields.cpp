#include "certerr/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace certerr {

ScalarField interpolate_scalar(const Mesh& mesh, const PointFn& g, bool zero_boundary) {
  ScalarField field;
  field.mesh = &mesh;
  field.zero_boundary = zero_boundary;
  field.dofs.resize(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (zero_boundary && mesh.vertex_boundary[v]) {
      field.dofs[v] = 0.0;
      continue;
    }
    const double val = g(mesh.vertices[v]);
    if (!std::isfinite(val))
      throw std::domain_error("interpolate_scalar: non-finite value at a vertex");
    field.dofs[v] = val;
  }
  return field;
}

FluxField interpolate_flux(const Mesh& mesh, const PointVecFn& G) {
  FluxField field;
  field.mesh = &mesh;
  field.dofs.resize(mesh.num_facets());
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& facet = mesh.facets[f];
    Eigen::Vector2d mid = mesh.vertices[facet.vertices[0]];
    if (mesh.dim == 2) mid = 0.5 * (mid + mesh.vertices[facet.vertices[1]]);
    const double flux = facet.measure * G(mid).dot(facet.normal);
    if (!std::isfinite(flux))
      throw std::domain_error("interpolate_flux: non-finite normal trace at a facet");
    field.dofs[f] = flux;
  }
  return field;
}

double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

ScalarField random_zero_boundary_field(const Mesh& mesh, std::mt19937_64& rng) {
  ScalarField field;
  field.mesh = &mesh;
  field.zero_boundary = true;
  field.dofs.resize(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v)
    field.dofs[v] = mesh.vertex_boundary[v] ? 0.0 : uniform_pm1(rng);
  return field;
}

FluxField random_flux_field(const Mesh& mesh, std::mt19937_64& rng) {
  FluxField field;
  field.mesh = &mesh;
  field.dofs.resize(mesh.num_facets());
  for (int f = 0; f < mesh.num_facets(); ++f)
    field.dofs[f] = mesh.facets[f].measure * uniform_pm1(rng);
  return field;
}

}  // namespace certerr
