#ifndef CHDG_FORMS_HPP
#define CHDG_FORMS_HPP

#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "chdg/basis.hpp"

namespace chdg {

// Interior-penalty configuration. tau mirrors the boundary handling of the
// weak form: 1 under periodic wrap (where every face is interior anyway),
// 0 under homogeneous Neumann, where all boundary face terms drop.
struct PenaltyConfig {
  double beta0 = 1.0;
  int tau = 1;

  static PenaltyConfig make(const Mesh& mesh, double beta0);
};

// beta0 = k^2 + 0.5k for constant mobility, 3k^2 + 0.5k otherwise.
double default_beta0(int degree, bool constant_mobility);

// Symmetric sparse operator on the DG coefficient vector; off-diagonal
// blocks only couple face-neighbor cells.
struct SparseOperator {
  Eigen::SparseMatrix<double> mat;

  int dofs() const { return static_cast<int>(mat.rows()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return mat * v; }
  double bilinear(const Eigen::VectorXd& q, const Eigen::VectorXd& v) const {
    return v.dot(mat * q);
  }
  double quad_form(const Eigen::VectorXd& v) const { return v.dot(mat * v); }
};

// Pointwise weight a(x): either a constant or nodal values (interior
// quadrature nodes) plus per-face values at face quadrature nodes. The face
// values realize the convention a|_e = M({u_h}) (value of the coefficient
// at the average trace).
struct WeightField {
  bool constant = true;
  double value = 1.0;
  Eigen::VectorXd volume;                  // per volume node, AuxField layout
  std::vector<Eigen::VectorXd> face;       // [interior face][face quad node]

  static WeightField uniform(double v) { return {true, v, {}, {}}; }
};

// Number of quadrature nodes on each face (1 in 1D, q in 2D).
int face_quad_count(const DGSpace& space);

// Average trace {u} at every face quadrature node of every interior face.
std::vector<Eigen::VectorXd> face_average_values(const DGField& u);

// Weight built by mapping g over u: g(u(x)) at volume nodes, g({u}) on faces.
WeightField pointwise_weight(const DGField& u, const std::function<double(double)>& g);

// A(a; q, v) = sum_K int a grad q . grad v
//            + sum_{e in interior} int_e a ( (beta0/h_e)[q][v] + {d_nu q}[v] + [q]{d_nu v} )
// Boundary faces carry no terms: Neumann fluxes vanish there and periodic
// meshes have no boundary faces. Throws AssemblyError if a <= 0 at any node.
SparseOperator assemble_bilinear(const DGSpace& space, const WeightField& a,
                                 const PenaltyConfig& cfg);

// Weighted mass form sum_K int w phi_i phi_j (block diagonal; w >= 0 gives
// a positive semidefinite operator, w = 1 the identity).
SparseOperator assemble_weighted_mass(const DGSpace& space, const Eigen::VectorXd& nodal_weight);

// Volume part only: sum_K int a grad q . grad v.
SparseOperator assemble_volume_gradient(const DGSpace& space, const WeightField& a);

// Face part of the coercivity quotient: sum_e h_e int_e a {d_nu q}{d_nu v}.
SparseOperator assemble_face_normal_form(const DGSpace& space, const WeightField& a, int tau);

// Squared DG norm: sum_K int |grad v|^2 + sum_e (beta0/h_e) int_e [v]^2.
double dg_norm_sq(const DGField& v, const PenaltyConfig& cfg);

struct BetaStarEstimate {
  double value = 0.0;
  // true when the gradient form vanishes identically (k = 0): the quotient
  // is empty and the value reported is 0
  bool degenerate = false;
};

// Largest generalized eigenvalue of the face form against the volume form
// on the complement of the (cellwise-constant) null space; realizes the
// sup of the penalty quotient over nonconstant fields. Dense solve, meant
// for desk-scale meshes.
BetaStarEstimate estimate_beta_star(const DGSpace& space, const WeightField& a, int tau);

}  // namespace chdg

#endif
