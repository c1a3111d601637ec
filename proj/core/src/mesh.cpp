#include "chdg/mesh.hpp"

#include <string>

#include "chdg/errors.hpp"

namespace chdg {

Mesh Mesh::build(const MeshSpec& spec) {
  if (spec.dim < 1 || spec.dim > 2)
    throw ConfigError("mesh: dimension must be 1 or 2, got " + std::to_string(spec.dim));
  std::vector<std::vector<double>> breaks(spec.dim);
  for (int a = 0; a < spec.dim; ++a) {
    if (!(spec.hi[a] > spec.lo[a]))
      throw ConfigError("mesh: axis " + std::to_string(a) + " interval [" +
                        std::to_string(spec.lo[a]) + ", " + std::to_string(spec.hi[a]) +
                        "] is empty");
    if (spec.cells[a] < 1)
      throw ConfigError("mesh: axis " + std::to_string(a) + " needs at least one cell");
    int n = spec.cells[a];
    breaks[a].resize(n + 1);
    double width = spec.hi[a] - spec.lo[a];
    for (int i = 0; i <= n; ++i)
      breaks[a][i] = spec.lo[a] + width * (static_cast<double>(i) / n);
    breaks[a][n] = spec.hi[a];
  }
  return build(breaks, spec.bc);
}

Mesh Mesh::build(const std::vector<std::vector<double>>& breakpoints, BoundaryKind bc) {
  const int dim = static_cast<int>(breakpoints.size());
  if (dim < 1 || dim > 2) throw ConfigError("mesh: dimension must be 1 or 2");

  Mesh mesh;
  mesh.dim_ = dim;
  mesh.bc_ = bc;
  mesh.num_cells_ = 1;
  for (int a = 0; a < dim; ++a) {
    const auto& b = breakpoints[a];
    if (b.size() < 2) throw ConfigError("mesh: axis " + std::to_string(a) + " has no cells");
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
      if (!(b[i + 1] > b[i]))
        throw ConfigError("mesh: axis " + std::to_string(a) + " breakpoints not increasing");
    if (bc == BoundaryKind::periodic && b.size() < 3)
      throw ConfigError("mesh: periodic axis " + std::to_string(a) +
                        " needs at least 2 cells so each wrap face joins two distinct cells");
    mesh.breaks_[a] = b;
    mesh.num_cells_ *= static_cast<int>(b.size()) - 1;
  }

  const int n0 = mesh.cells_along(0);
  const int n1 = dim == 2 ? mesh.cells_along(1) : 1;
  const bool periodic = bc == BoundaryKind::periodic;

  auto extent = [&](int axis, int i) {
    return mesh.breaks_[axis][i + 1] - mesh.breaks_[axis][i];
  };

  // Interior faces, axis by axis; within an axis ordered by transverse cell
  // then position. Periodic axes append the wrap face (last cell -> first).
  for (int axis = 0; axis < dim; ++axis) {
    const int n_axis = axis == 0 ? n0 : n1;
    const int n_trans = dim == 2 ? (axis == 0 ? n1 : n0) : 1;
    for (int t = 0; t < n_trans; ++t) {
      const int trans_axis = 1 - axis;
      for (int i = 0; i + 1 < n_axis; ++i) {
        Face f;
        f.axis = axis;
        f.cell_minus = axis == 0 ? mesh.cell_index(i, t) : mesh.cell_index(t, i);
        f.cell_plus = axis == 0 ? mesh.cell_index(i + 1, t) : mesh.cell_index(t, i + 1);
        f.coord_minus = f.coord_plus = mesh.breaks_[axis][i + 1];
        if (dim == 2) {
          f.t_lo = mesh.breaks_[trans_axis][t];
          f.t_hi = mesh.breaks_[trans_axis][t + 1];
        }
        f.h_e = 0.5 * (extent(axis, i) + extent(axis, i + 1));
        mesh.faces_.push_back(f);
      }
      if (periodic) {
        Face f;
        f.axis = axis;
        f.cell_minus = axis == 0 ? mesh.cell_index(n_axis - 1, t) : mesh.cell_index(t, n_axis - 1);
        f.cell_plus = axis == 0 ? mesh.cell_index(0, t) : mesh.cell_index(t, 0);
        f.coord_minus = mesh.breaks_[axis].back();
        f.coord_plus = mesh.breaks_[axis].front();
        if (dim == 2) {
          f.t_lo = mesh.breaks_[trans_axis][t];
          f.t_hi = mesh.breaks_[trans_axis][t + 1];
        }
        f.h_e = 0.5 * (extent(axis, n_axis - 1) + extent(axis, 0));
        mesh.faces_.push_back(f);
      } else {
        for (int side = 0; side < 2; ++side) {
          BoundaryFace f;
          f.axis = axis;
          f.side = side;
          const int i = side == 0 ? 0 : n_axis - 1;
          f.cell = axis == 0 ? mesh.cell_index(i, t) : mesh.cell_index(t, i);
          f.coord = side == 0 ? mesh.breaks_[axis].front() : mesh.breaks_[axis].back();
          if (dim == 2) {
            f.t_lo = mesh.breaks_[trans_axis][t];
            f.t_hi = mesh.breaks_[trans_axis][t + 1];
          }
          f.h_e = extent(axis, i);
          mesh.bfaces_.push_back(f);
        }
      }
    }
  }
  return mesh;
}

}  // namespace chdg
