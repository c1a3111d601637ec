#include "chdg/physics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chdg/errors.hpp"

namespace chdg {

namespace {

PotentialValue flory_huggins_core(double theta, double theta_c, double u) {
  double f = 0.5 * theta * (u * std::log(u) + (1.0 - u) * std::log(1.0 - u)) +
             0.5 * theta_c * u * (1.0 - u);
  double df = 0.5 * theta * (std::log(u) - std::log(1.0 - u)) + 0.5 * theta_c * (1.0 - 2.0 * u);
  return {f, df};
}

}  // namespace

PotentialValue eval_potential(const PotentialSpec& spec, double u) {
  switch (spec.kind) {
    case PotentialKind::double_well: {
      double s = u * u - 1.0;
      return {0.25 * s * s, u * s};
    }
    case PotentialKind::flory_huggins: {
      if (!(u > 0.0 && u < 1.0))
        throw DomainError("flory_huggins potential needs u in (0,1), got " + std::to_string(u) +
                          "; use the regularized variant");
      return flory_huggins_core(spec.theta, spec.theta_c, u);
    }
    case PotentialKind::regularized_flory_huggins: {
      const double s = spec.sigma;
      const double th = spec.theta, tc = spec.theta_c;
      if (u >= 1.0 - s) {
        double f = 0.5 * th * (u * std::log(u) + (1.0 - u) * std::log(s) +
                               (1.0 - u) * (1.0 - u) / (2.0 * s) - 0.5 * s) +
                   0.5 * tc * u * (1.0 - u);
        double df = 0.5 * th * (std::log(u) + 1.0 - std::log(s) - (1.0 - u) / s) +
                    0.5 * tc * (1.0 - 2.0 * u);
        return {f, df};
      }
      if (u <= s) {
        double f = 0.5 * th * ((1.0 - u) * std::log(1.0 - u) + u * std::log(s) +
                               u * u / (2.0 * s) - 0.5 * s) +
                   0.5 * tc * u * (1.0 - u);
        double df = 0.5 * th * (-std::log(1.0 - u) - 1.0 + std::log(s) + u / s) +
                    0.5 * tc * (1.0 - 2.0 * u);
        return {f, df};
      }
      return flory_huggins_core(th, tc, u);
    }
  }
  throw ConfigError("unknown potential kind");
}

double MobilitySpec::min_value() const {
  switch (kind) {
    case MobilityKind::constant:
      return value;
    case MobilityKind::degenerate:
      return 0.0;
    case MobilityKind::clamped_degenerate:
      return sigma * (1.0 - sigma);
  }
  return 0.0;
}

double MobilitySpec::max_value() const {
  switch (kind) {
    case MobilityKind::constant:
      return value;
    case MobilityKind::degenerate:
    case MobilityKind::clamped_degenerate:
      return 0.25;
  }
  return 0.0;
}

double eval_mobility(const MobilitySpec& spec, double u) {
  switch (spec.kind) {
    case MobilityKind::constant:
      return spec.value;
    case MobilityKind::degenerate:
      if (u < 0.0 || u > 1.0)
        throw DomainError("degenerate mobility needs u in [0,1], got " + std::to_string(u) +
                          "; use the clamped variant");
      return u * (1.0 - u);
    case MobilityKind::clamped_degenerate: {
      double v = std::clamp(u, spec.sigma, 1.0 - spec.sigma);
      return v * (1.0 - v);
    }
  }
  throw ConfigError("unknown mobility kind");
}

double eval_H(const PotentialSpec& spec, double u) {
  PotentialValue p = eval_potential(spec, u);
  double rad = p.f + spec.shift_b;
  if (!(rad > 0.0))
    throw ConfigError("H(u): F(u) + B = " + std::to_string(rad) + " <= 0 at u = " +
                      std::to_string(u) + "; increase B");
  return p.df / std::sqrt(rad);
}

AuxField init_aux(const PotentialSpec& spec, const PointFunction& u0, const DGSpace& space) {
  AuxField aux = AuxField::zero(space);
  for (int cell = 0; cell < space.num_cells(); ++cell)
    for (int node = 0; node < space.nodes_per_cell(); ++node) {
      auto x = space.node_coord(cell, node);
      double rad = eval_potential(spec, u0(x)).f + spec.shift_b;
      if (!(rad > 0.0))
        throw ConfigError("init_aux: F(u0) + B = " + std::to_string(rad) +
                          " <= 0 at quadrature node (" + std::to_string(x[0]) + ", " +
                          std::to_string(x[1]) + ") of cell " + std::to_string(cell));
      aux.values[space.global_node(cell, node)] = std::sqrt(rad);
    }
  return aux;
}

}  // namespace chdg
