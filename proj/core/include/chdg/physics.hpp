#ifndef CHDG_PHYSICS_HPP
#define CHDG_PHYSICS_HPP

#include "chdg/basis.hpp"

namespace chdg {

enum class PotentialKind { double_well, flory_huggins, regularized_flory_huggins };

// Bulk potential F and the IEQ shift B (F + B must stay positive on the
// evaluated range). The regularized Flory-Huggins variant replaces the
// logarithms outside [sigma, 1-sigma] by their C^2 quadratic extensions and
// is defined on all of R; the plain variant lives on (0, 1) only.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::double_well;
  double theta = 2.0;
  double theta_c = 2.0;
  double sigma = 1e-4;
  double shift_b = 1.0;
};

enum class MobilityKind { constant, degenerate, clamped_degenerate };

// M(u). The clamped variant freezes u(1-u) outside [sigma, 1-sigma], so
// M_min = sigma(1-sigma) > 0 and M_max = 1/4; the unclamped degenerate
// variant is only valid for arguments in [0, 1].
struct MobilitySpec {
  MobilityKind kind = MobilityKind::constant;
  double value = 1.0;  // constant mobility
  double sigma = 1e-4;

  bool is_constant() const { return kind == MobilityKind::constant; }
  double min_value() const;
  double max_value() const;
};

struct PotentialValue {
  double f;
  double df;
};

// F(u), F'(u). Throws DomainError for the plain Flory-Huggins potential
// outside (0, 1) -- callers should switch to the regularized variant.
PotentialValue eval_potential(const PotentialSpec& spec, double u);

double eval_mobility(const MobilitySpec& spec, double u);

// H(u) = F'(u) / sqrt(F(u) + B). Throws ConfigError when F(u) + B <= 0.
double eval_H(const PotentialSpec& spec, double u);

// U(x, 0) = sqrt(F(u0(x)) + B) at the volume quadrature nodes.
AuxField init_aux(const PotentialSpec& spec, const PointFunction& u0, const DGSpace& space);

}  // namespace chdg

#endif
