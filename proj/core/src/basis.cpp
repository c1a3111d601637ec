#include "chdg/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chdg/errors.hpp"

namespace chdg {

DGSpace::DGSpace(const Mesh& mesh, int degree, int quad_points, BasisFamily family)
    : mesh_(&mesh), degree_(degree), family_(family) {
  if (degree < 0) throw ConfigError("space: polynomial degree must be >= 0");
  if (degree > 12) throw ConfigError("space: polynomial degree capped at 12");
  int q = quad_points > 0 ? quad_points : degree + 2;
  if (q < degree + 2)
    throw ConfigError("space: need at least k+2 quadrature points per axis, got " +
                      std::to_string(q));
  rule_ = gauss_rule(q);

  const int d = mesh.dim();
  nodes_per_cell_ = 1;
  for (int a = 0; a < d; ++a) nodes_per_cell_ *= q;

  if (d == 1) {
    for (int j = 0; j <= degree; ++j) modes_.push_back({j, 0});
  } else {
    for (int j1 = 0; j1 <= degree; ++j1)
      for (int j0 = 0; j0 <= degree; ++j0)
        if (family == BasisFamily::tensor || j0 + j1 <= degree) modes_.push_back({j0, j1});
  }

  ref_p_.resize((degree + 1) * q);
  ref_dp_.resize((degree + 1) * q);
  std::vector<double> vals(degree + 1), ders(degree + 1);
  for (int iq = 0; iq < q; ++iq) {
    legendre_all(degree, rule_.nodes[iq], vals.data(), ders.data());
    for (int j = 0; j <= degree; ++j) {
      ref_p_[j * q + iq] = vals[j];
      ref_dp_[j * q + iq] = ders[j];
    }
  }
  end_p_.resize(2 * (degree + 1));
  end_dp_.resize(2 * (degree + 1));
  for (int j = 0; j <= degree; ++j) {
    end_p_[2 * j + 0] = (j % 2 == 0) ? 1.0 : -1.0;   // P_j(-1)
    end_p_[2 * j + 1] = 1.0;                         // P_j(+1)
    double dp1 = 0.5 * j * (j + 1);                  // P_j'(+1)
    end_dp_[2 * j + 1] = dp1;
    end_dp_[2 * j + 0] = (j % 2 == 0) ? -dp1 : dp1;  // P_j'(-1)
  }
}

std::array<double, 2> DGSpace::node_coord(int cell, int node) const {
  const int q = rule_.size();
  std::array<double, 2> x{0.0, 0.0};
  int idx[2] = {node % q, node / q};
  for (int a = 0; a < dim(); ++a) {
    double c = mesh_->cell_center(cell, a);
    double h = mesh_->cell_width(cell, a);
    x[a] = c + 0.5 * h * rule_.nodes[idx[a]];
  }
  return x;
}

double DGSpace::node_weight(int cell, int node) const {
  const int q = rule_.size();
  int idx[2] = {node % q, node / q};
  double w = 1.0;
  for (int a = 0; a < dim(); ++a)
    w *= 0.5 * mesh_->cell_width(cell, a) * rule_.weights[idx[a]];
  return w;
}

namespace {

// per-axis reference coordinate of a physical point, with closure check
double ref_coord(const Mesh& mesh, int cell, int axis, double x) {
  double lo = mesh.cell_lo(cell, axis), hi = mesh.cell_hi(cell, axis);
  double h = hi - lo;
  double tol = 1e-10 * h;
  if (x < lo - tol || x > hi + tol)
    throw DomainError("basis: point coordinate " + std::to_string(x) + " outside cell closure [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  double xi = 2.0 * (x - lo) / h - 1.0;
  return std::clamp(xi, -1.0, 1.0);
}

}  // namespace

void basis_eval(const DGSpace& space, int cell, const std::array<double, 2>& point,
                Eigen::VectorXd& values, Eigen::MatrixXd* gradients) {
  const Mesh& mesh = space.mesh();
  const int d = space.dim();
  const int k = space.degree();
  const int m = space.modes_per_cell();

  double p[2][16], dp[2][16];
  double jac[2] = {1.0, 1.0};
  for (int a = 0; a < d; ++a) {
    double xi = ref_coord(mesh, cell, a, point[a]);
    legendre_all(k, xi, p[a], dp[a]);
    jac[a] = 2.0 / mesh.cell_width(cell, a);
  }

  values.resize(m);
  if (gradients) gradients->resize(m, d);
  for (int j = 0; j < m; ++j) {
    auto mj = space.mode(j);
    double v = 1.0;
    for (int a = 0; a < d; ++a) v *= p[a][mj[a]] * space.scale(cell, a, mj[a]);
    values[j] = v;
    if (gradients) {
      for (int g = 0; g < d; ++g) {
        double dv = 1.0;
        for (int a = 0; a < d; ++a) {
          double factor = (a == g) ? dp[a][mj[a]] * jac[a] : p[a][mj[a]];
          dv *= factor * space.scale(cell, a, mj[a]);
        }
        (*gradients)(j, g) = dv;
      }
    }
  }
}

double field_eval(const DGField& field, int cell, const std::array<double, 2>& point,
                  std::array<double, 2>* gradient) {
  const DGSpace& space = *field.space;
  Eigen::VectorXd values;
  Eigen::MatrixXd grads;
  basis_eval(space, cell, point, values, gradient ? &grads : nullptr);
  const int m = space.modes_per_cell();
  auto block = field.coeffs.segment(space.global_dof(cell, 0), m);
  if (gradient) {
    for (int a = 0; a < space.dim(); ++a) (*gradient)[a] = grads.col(a).dot(block);
    if (space.dim() == 1) (*gradient)[1] = 0.0;
  }
  return values.dot(block);
}

Eigen::VectorXd field_node_values(const DGField& field) {
  const DGSpace& s = *field.space;
  const int q = s.quad_per_axis();
  const int m = s.modes_per_cell();
  const int npc = s.nodes_per_cell();
  const int d = s.dim();
  Eigen::VectorXd out(s.num_nodes());
  for (int cell = 0; cell < s.num_cells(); ++cell) {
    const double* c = field.coeffs.data() + cell * m;
    for (int node = 0; node < npc; ++node) {
      int i0 = node % q, i1 = node / q;
      double v = 0.0;
      for (int j = 0; j < m; ++j) {
        auto mj = s.mode(j);
        double phi = s.ref_value(mj[0], i0) * s.scale(cell, 0, mj[0]);
        if (d == 2) phi *= s.ref_value(mj[1], i1) * s.scale(cell, 1, mj[1]);
        v += c[j] * phi;
      }
      out[cell * npc + node] = v;
    }
  }
  return out;
}

DGField project_nodal(const DGSpace& space, const Eigen::VectorXd& nodal_values) {
  const int q = space.quad_per_axis();
  const int m = space.modes_per_cell();
  const int npc = space.nodes_per_cell();
  const int d = space.dim();
  DGField field = DGField::zero(space);
  for (int cell = 0; cell < space.num_cells(); ++cell) {
    double* c = field.coeffs.data() + cell * m;
    for (int node = 0; node < npc; ++node) {
      int i0 = node % q, i1 = node / q;
      double wf = space.node_weight(cell, node) * nodal_values[cell * npc + node];
      for (int j = 0; j < m; ++j) {
        auto mj = space.mode(j);
        double phi = space.ref_value(mj[0], i0) * space.scale(cell, 0, mj[0]);
        if (d == 2) phi *= space.ref_value(mj[1], i1) * space.scale(cell, 1, mj[1]);
        c[j] += wf * phi;
      }
    }
  }
  return field;
}

AuxField sample_at_nodes(const DGSpace& space, const PointFunction& f) {
  AuxField aux = AuxField::zero(space);
  for (int cell = 0; cell < space.num_cells(); ++cell)
    for (int node = 0; node < space.nodes_per_cell(); ++node)
      aux.values[space.global_node(cell, node)] = f(space.node_coord(cell, node));
  return aux;
}

DGField l2_project(const DGSpace& space, const PointFunction& f) {
  return l2_project(sample_at_nodes(space, f));
}

double nodal_inner(const DGSpace& space, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  double sum = 0.0;
  for (int cell = 0; cell < space.num_cells(); ++cell)
    for (int node = 0; node < space.nodes_per_cell(); ++node) {
      int i = space.global_node(cell, node);
      sum += space.node_weight(cell, node) * f[i] * g[i];
    }
  return sum;
}

double nodal_integral(const DGSpace& space, const Eigen::VectorXd& f) {
  double sum = 0.0;
  for (int cell = 0; cell < space.num_cells(); ++cell)
    for (int node = 0; node < space.nodes_per_cell(); ++node)
      sum += space.node_weight(cell, node) * f[space.global_node(cell, node)];
  return sum;
}

}  // namespace chdg
