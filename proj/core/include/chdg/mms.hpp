#ifndef CHDG_MMS_HPP
#define CHDG_MMS_HPP

#include <string>

#include "chdg/stepper.hpp"

namespace chdg {

// Manufactured-solution cases. Each case fixes the physics (potential,
// mobility, epsilon, B), the domain for each boundary kind, a closed-form
// exact solution, and the matching source term; the solver runs with the
// clamped/regularized physics variants while the source is derived from the
// exact (unclamped) coefficients, which coincide on the solution range.
enum class MMSCaseId { dw_1d, dw_2d, fh_2d, deg_fh_2d };

struct MMSCase {
  MMSCaseId id;
  std::string name;  // CLI string: dw-1d, dw-2d, fh-2d, deg-fh-2d
  int dim = 1;
  double epsilon = 1.0;
  PotentialSpec potential;
  MobilitySpec mobility;
  SchemeKind default_scheme = SchemeKind::ieq1;
  double default_t_final = 0.01;
  std::array<double, 3> default_dt{1e-3, 1e-4, 1e-5};  // per degree k = 1, 2, 3
  bool supports_neumann = true;
  std::array<double, 2> lo_periodic{0.0, 0.0}, hi_periodic{1.0, 1.0};
  std::array<double, 2> lo_neumann{0.0, 0.0}, hi_neumann{1.0, 1.0};

  MeshSpec mesh_spec(BoundaryKind bc, int cells_per_axis) const;
};

// Lookup by CLI name; throws ConfigError for unknown ids.
const MMSCase& mms_case(const std::string& name);
const MMSCase& mms_case(MMSCaseId id);

double exact_solution(const MMSCase& c, const std::array<double, 2>& x, double t);
std::array<double, 2> exact_gradient(const MMSCase& c, const std::array<double, 2>& x, double t);
double source_term(const MMSCase& c, const std::array<double, 2>& x, double t);

// u_t - div(M(u) grad(-eps^2 lap u + F'(u))) - s evaluated with 4th-order
// central differences of the closed forms (anti-regression guard for the
// derived sources). Step sizes are 1e-3 of the domain width per axis.
double residual_oracle(const MMSCase& c, BoundaryKind bc, const std::array<double, 2>& x,
                       double t);

}  // namespace chdg

#endif
