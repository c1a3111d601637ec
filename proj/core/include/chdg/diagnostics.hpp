#ifndef CHDG_DIAGNOSTICS_HPP
#define CHDG_DIAGNOSTICS_HPP

#include <optional>
#include <vector>

#include "chdg/stepper.hpp"

namespace chdg {

// One monitoring row per reported step. energy_modified is only meaningful
// once BDF2 history exists; identity_residual and dgnorm_w refer to the step
// that produced this state (zero at step 0).
struct DiagnosticsRecord {
  long step = 0;
  double time = 0.0;
  double mass = 0.0;
  double energy_original = 0.0;     // 1/2 A(eps^2; u, u) + int F(u)
  double energy_quadratized = 0.0;  // 1/2 A(eps^2; u, u) + ||U_h||^2
  double energy_modified = 0.0;     // mean of current and extrapolated energies
  double identity_residual = 0.0;
  double dgnorm_w = 0.0;            // squared DG norm of the chemical potential
};

// int_Omega u by volume quadrature (exact for polynomials).
double total_mass(const DGField& u);

// Energies of the current state; a_eps is the assembled A(eps^2; ., .).
// Without BDF2 history the modified energy falls back to the quadratized one
// (equal arguments in the average).
DiagnosticsRecord energies(const SchemeState& state, const SparseOperator& a_eps,
                           const PotentialSpec& potential);

// L2 (volume quadrature) and Linf (dense per-cell sampling: a 10^d uniform
// closed grid per cell) distance between a DG field and a pointwise function.
struct ErrorNorms {
  double l2 = 0.0;
  double linf = 0.0;
};
ErrorNorms error_norms(const DGField& u, const PointFunction& exact);

// Empirical orders: order_i = ln(e_i / e_{i+1}) / ln(h_i / h_{i+1}).
// Non-finite entries mark undefined orders (zero error or bad sizes).
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& sizes);

}  // namespace chdg

#endif
