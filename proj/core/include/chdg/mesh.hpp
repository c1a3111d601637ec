#ifndef CHDG_MESH_HPP
#define CHDG_MESH_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace chdg {

enum class BoundaryKind { periodic, neumann };

// Tensor-product rectangular mesh request. dim is 1 or 2; axis i covers
// [lo[i], hi[i]] with cells[i] uniform cells. The boundary kind applies to
// all axes.
struct MeshSpec {
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  std::array<int, 2> cells{1, 1};
  BoundaryKind bc = BoundaryKind::periodic;
};

// Interior face between cell_minus and cell_plus, oriented along +axis
// (the unit normal nu points from cell_minus into cell_plus). Jumps follow
// [v] = v|plus - v|minus and averages {v} = (v|plus + v|minus)/2.
//
// coord_minus/coord_plus are the trace coordinates along the face axis as
// seen from each cell; they differ only across the periodic wrap. In 2D the
// face spans [t_lo, t_hi] along the other axis.
struct Face {
  int axis = 0;
  int cell_minus = -1;
  int cell_plus = -1;
  double coord_minus = 0.0;
  double coord_plus = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double h_e = 0.0;  // characteristic length (axis width on uniform meshes)
};

// Boundary face (Neumann meshes only): a single adjacent cell and the side
// it sits on (0 = low end of the axis, 1 = high end).
struct BoundaryFace {
  int axis = 0;
  int cell = -1;
  int side = 0;
  double coord = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double h_e = 0.0;
};

// Immutable after construction; cell and face enumeration is lexicographic
// by axis so downstream assembly is deterministic.
class Mesh {
 public:
  // Uniform mesh from a spec. Throws ConfigError on invalid intervals, zero
  // cell counts, or a periodic axis with fewer than 2 cells (a wrap face
  // must join two distinct cells).
  static Mesh build(const MeshSpec& spec);

  // General tensor mesh from explicit per-axis breakpoints (ascending).
  // h_e on interior faces is the arithmetic mean of the two adjacent cell
  // extents along the face normal; on Neumann boundary faces the single
  // adjacent extent. Reduces to the axis width on uniform meshes.
  static Mesh build(const std::vector<std::vector<double>>& breakpoints, BoundaryKind bc);

  int dim() const { return dim_; }
  BoundaryKind bc() const { return bc_; }
  int tau() const { return bc_ == BoundaryKind::periodic ? 1 : 0; }

  int num_cells() const { return num_cells_; }
  int cells_along(int axis) const { return static_cast<int>(breaks_[axis].size()) - 1; }

  // Lexicographic cell index: axis 0 varies fastest.
  int cell_index(int i0, int i1 = 0) const { return i0 + cells_along(0) * i1; }
  std::array<int, 2> cell_coords(int cell) const {
    return {cell % cells_along(0), cell / cells_along(0)};
  }

  double cell_lo(int cell, int axis) const { return breaks_[axis][cell_coords(cell)[axis]]; }
  double cell_hi(int cell, int axis) const { return breaks_[axis][cell_coords(cell)[axis] + 1]; }
  double cell_width(int cell, int axis) const { return cell_hi(cell, axis) - cell_lo(cell, axis); }
  double cell_center(int cell, int axis) const {
    return 0.5 * (cell_lo(cell, axis) + cell_hi(cell, axis));
  }
  double cell_measure(int cell) const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= cell_width(cell, a);
    return v;
  }

  double domain_lo(int axis) const { return breaks_[axis].front(); }
  double domain_hi(int axis) const { return breaks_[axis].back(); }
  double domain_measure() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= domain_hi(a) - domain_lo(a);
    return v;
  }

  const std::vector<Face>& interior_faces() const { return faces_; }
  const std::vector<BoundaryFace>& boundary_faces() const { return bfaces_; }

 private:
  Mesh() = default;

  int dim_ = 1;
  BoundaryKind bc_ = BoundaryKind::periodic;
  int num_cells_ = 0;
  std::array<std::vector<double>, 2> breaks_;
  std::vector<Face> faces_;
  std::vector<BoundaryFace> bfaces_;
};

}  // namespace chdg

#endif
