#include "chdg/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "chdg/errors.hpp"

namespace chdg {

double total_mass(const DGField& u) {
  const DGSpace& s = *u.space;
  double sum = 0.0;
  // only the constant mode integrates to something: int phi_0 = sqrt(|K|)
  for (int cell = 0; cell < s.num_cells(); ++cell)
    sum += u.coeffs[s.global_dof(cell, 0)] * std::sqrt(s.mesh().cell_measure(cell));
  return sum;
}

DiagnosticsRecord energies(const SchemeState& state, const SparseOperator& a_eps,
                           const PotentialSpec& potential) {
  const DGSpace& s = *state.u.space;
  DiagnosticsRecord rec;
  rec.step = state.step;
  rec.time = state.time;
  rec.mass = total_mass(state.u);

  double grad_energy = 0.5 * a_eps.quad_form(state.u.coeffs);
  Eigen::VectorXd u_nodal = field_node_values(state.u);
  Eigen::VectorXd f_nodal(u_nodal.size());
  for (int i = 0; i < u_nodal.size(); ++i) f_nodal[i] = eval_potential(potential, u_nodal[i]).f;
  rec.energy_original = grad_energy + nodal_integral(s, f_nodal);
  rec.energy_quadratized = grad_energy + state.U_h.coeffs.squaredNorm();

  if (state.has_history()) {
    Eigen::VectorXd ustar = 2.0 * state.u.coeffs - state.u_prev->coeffs;
    Eigen::VectorXd uhstar = 2.0 * state.U_h.coeffs - state.U_h_prev->coeffs;
    double e_star = 0.5 * a_eps.quad_form(ustar) + uhstar.squaredNorm();
    rec.energy_modified = 0.5 * (rec.energy_quadratized + e_star);
  } else {
    rec.energy_modified = rec.energy_quadratized;
  }
  return rec;
}

ErrorNorms error_norms(const DGField& u, const PointFunction& exact) {
  const DGSpace& s = *u.space;
  const int d = s.dim();
  ErrorNorms err;

  Eigen::VectorXd u_nodal = field_node_values(u);
  double l2sq = 0.0;
  for (int cell = 0; cell < s.num_cells(); ++cell)
    for (int node = 0; node < s.nodes_per_cell(); ++node) {
      double diff = u_nodal[s.global_node(cell, node)] - exact(s.node_coord(cell, node));
      l2sq += s.node_weight(cell, node) * diff * diff;
    }
  err.l2 = std::sqrt(l2sq);

  const int ns = 10;  // closed uniform grid per axis, endpoints = cell corners
  Eigen::VectorXd values;
  for (int cell = 0; cell < s.num_cells(); ++cell) {
    const int total = d == 1 ? ns : ns * ns;
    for (int p = 0; p < total; ++p) {
      std::array<double, 2> x{0.0, 0.0};
      int idx[2] = {p % ns, p / ns};
      for (int a = 0; a < d; ++a) {
        double lo = s.mesh().cell_lo(cell, a);
        double h = s.mesh().cell_width(cell, a);
        x[a] = lo + h * (static_cast<double>(idx[a]) / (ns - 1));
      }
      double diff = std::abs(field_eval(u, cell, x) - exact(x));
      err.linf = std::max(err.linf, diff);
    }
  }
  return err;
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& sizes) {
  if (errors.size() < 2 || errors.size() != sizes.size())
    throw ConfigError("eoc: need matching lists with at least two entries");
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(errors[i + 1] > 0.0) || !(sizes[i] > 0.0) ||
        !(sizes[i + 1] > 0.0) || sizes[i] == sizes[i + 1]) {
      orders.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    orders.push_back(std::log(errors[i] / errors[i + 1]) / std::log(sizes[i] / sizes[i + 1]));
  }
  return orders;
}

}  // namespace chdg
