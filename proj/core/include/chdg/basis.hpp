#ifndef CHDG_BASIS_HPP
#define CHDG_BASIS_HPP

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "chdg/mesh.hpp"
#include "chdg/quadrature.hpp"

namespace chdg {

// Tensor-product Legendre modes (Q^k, the default) or the total-degree
// subset (P^k: modes with |j| <= k).
enum class BasisFamily { tensor, total_degree };

// Broken polynomial space on a tensor mesh. The per-cell basis is the
// L2-orthonormalized (tensor-)Legendre family, so every mass matrix is the
// identity and the piecewise L2 projection is a plain quadrature sum.
//
// Volume quadrature uses q Gauss points per axis (default k+2), which keeps
// products of two basis functions exactly integrable (degree 2k <= 2q-1);
// face rules reuse the same q points along the tangential axis.
class DGSpace {
 public:
  DGSpace(const Mesh& mesh, int degree, int quad_points = 0,
          BasisFamily family = BasisFamily::tensor);

  const Mesh& mesh() const { return *mesh_; }
  int dim() const { return mesh_->dim(); }
  int degree() const { return degree_; }
  BasisFamily family() const { return family_; }

  int modes_per_cell() const { return static_cast<int>(modes_.size()); }
  int num_cells() const { return mesh_->num_cells(); }
  int dofs() const { return num_cells() * modes_per_cell(); }

  int quad_per_axis() const { return rule_.size(); }
  int nodes_per_cell() const { return nodes_per_cell_; }
  int num_nodes() const { return num_cells() * nodes_per_cell_; }

  const GaussRule& rule() const { return rule_; }
  std::array<int, 2> mode(int j) const { return modes_[j]; }

  // reference tabulations: P_j / P_j' at the volume quadrature nodes and at
  // the endpoints xi = -1 (index 0), +1 (index 1)
  double ref_value(int j1d, int iq) const { return ref_p_[j1d * rule_.size() + iq]; }
  double ref_deriv(int j1d, int iq) const { return ref_dp_[j1d * rule_.size() + iq]; }
  double end_value(int j1d, int side) const { return end_p_[2 * j1d + side]; }
  double end_deriv(int j1d, int side) const { return end_dp_[2 * j1d + side]; }

  // orthonormalization factor sqrt((2j+1)/h) for a given cell and axis
  double scale(int cell, int axis, int j1d) const {
    return std::sqrt((2.0 * j1d + 1.0) / mesh_->cell_width(cell, axis));
  }

  // physical coordinates / weight of a volume quadrature node
  std::array<double, 2> node_coord(int cell, int node) const;
  double node_weight(int cell, int node) const;

  int global_dof(int cell, int j) const { return cell * modes_per_cell() + j; }
  int global_node(int cell, int node) const { return cell * nodes_per_cell_ + node; }

 private:
  const Mesh* mesh_;
  int degree_;
  BasisFamily family_;
  GaussRule rule_;
  int nodes_per_cell_;
  std::vector<std::array<int, 2>> modes_;
  std::vector<double> ref_p_, ref_dp_;
  std::vector<double> end_p_, end_dp_;
};

// Piecewise polynomial field: coefficients in the orthonormal cell basis,
// laid out [cell0 modes..., cell1 modes, ...].
struct DGField {
  const DGSpace* space = nullptr;
  Eigen::VectorXd coeffs;

  static DGField zero(const DGSpace& space) {
    return {&space, Eigen::VectorXd::Zero(space.dofs())};
  }
};

// Auxiliary variable stored by value at the volume quadrature nodes; between
// projections it is not a polynomial.
struct AuxField {
  const DGSpace* space = nullptr;
  Eigen::VectorXd values;

  static AuxField zero(const DGSpace& space) {
    return {&space, Eigen::VectorXd::Zero(space.num_nodes())};
  }
};

using PointFunction = std::function<double(const std::array<double, 2>&)>;

// Values (and optionally d/dx_a) of all modes of one cell at a physical
// point in the closed cell. Throws DomainError outside the closure.
void basis_eval(const DGSpace& space, int cell, const std::array<double, 2>& point,
                Eigen::VectorXd& values, Eigen::MatrixXd* gradients = nullptr);

// Field trace value at a point of the closed cell (one-sided evaluation on
// faces is selecting the cell). Optional gradient output.
double field_eval(const DGField& field, int cell, const std::array<double, 2>& point,
                  std::array<double, 2>* gradient = nullptr);

// Values of a field at every volume quadrature node (AuxField layout).
Eigen::VectorXd field_node_values(const DGField& field);

// Piecewise L2 projection of nodal values (quadrature transfer Pi).
DGField project_nodal(const DGSpace& space, const Eigen::VectorXd& nodal_values);
inline DGField l2_project(const AuxField& aux) { return project_nodal(*aux.space, aux.values); }

// Piecewise L2 projection of a pointwise-evaluable function.
DGField l2_project(const DGSpace& space, const PointFunction& f);

// Sample a function at all volume quadrature nodes.
AuxField sample_at_nodes(const DGSpace& space, const PointFunction& f);

// Quadrature inner product of two nodal value arrays: sum_K sum_q w f g.
double nodal_inner(const DGSpace& space, const Eigen::VectorXd& f, const Eigen::VectorXd& g);

// Quadrature integral of nodal values: sum_K sum_q w f.
double nodal_integral(const DGSpace& space, const Eigen::VectorXd& f);

}  // namespace chdg

#endif
