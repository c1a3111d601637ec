#include "chdg/mms.hpp"

#include <cmath>

#include "chdg/errors.hpp"

namespace chdg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// unregularized Flory-Huggins derivatives at theta = theta_c = 2
double fh2_d2(double u) { return 1.0 / u + 1.0 / (1.0 - u) - 2.0; }
double fh2_d3(double u) { return -1.0 / (u * u) + 1.0 / ((1.0 - u) * (1.0 - u)); }

MMSCase make_dw_1d() {
  MMSCase c;
  c.id = MMSCaseId::dw_1d;
  c.name = "dw-1d";
  c.dim = 1;
  c.epsilon = 1.0;
  c.potential = {PotentialKind::double_well, 0, 0, 1e-4, 1.0};
  c.mobility = {MobilityKind::constant, 1.0, 1e-4};
  c.default_scheme = SchemeKind::ieq2;
  c.default_t_final = 1.0;
  c.default_dt = {1e-3, 1e-4, 1e-5};
  c.supports_neumann = false;  // sin x is not a Neumann solution on [0, 2pi]
  c.lo_periodic = {0.0, 0.0};
  c.hi_periodic = {2.0 * kPi, 0.0};
  return c;
}

MMSCase make_dw_2d() {
  MMSCase c;
  c.id = MMSCaseId::dw_2d;
  c.name = "dw-2d";
  c.dim = 2;
  c.epsilon = 0.1;
  c.potential = {PotentialKind::double_well, 0, 0, 1e-4, 1.0};
  c.mobility = {MobilityKind::constant, 1.0, 1e-4};
  c.default_scheme = SchemeKind::ieq1;
  c.default_t_final = 0.01;
  c.default_dt = {1e-3, 1e-4, 1e-5};
  c.lo_periodic = {0.0, 0.0};
  c.hi_periodic = {4.0 * kPi, 4.0 * kPi};
  c.lo_neumann = {-kPi, -kPi};
  c.hi_neumann = {3.0 * kPi, 3.0 * kPi};
  return c;
}

MMSCase make_fh_2d() {
  MMSCase c;
  c.id = MMSCaseId::fh_2d;
  c.name = "fh-2d";
  c.dim = 2;
  c.epsilon = 1.0;
  c.potential = {PotentialKind::regularized_flory_huggins, 2.0, 2.0, 1e-4, 10.0};
  c.mobility = {MobilityKind::constant, 1.0, 1e-4};
  c.default_scheme = SchemeKind::ieq2;
  c.default_t_final = 0.01;
  c.default_dt = {1e-3, 1e-4, 5e-6};
  c.lo_periodic = {0.0, 0.0};
  c.hi_periodic = {8.0 * kPi, 8.0 * kPi};
  c.lo_neumann = {-2.0 * kPi, -2.0 * kPi};
  c.hi_neumann = {2.0 * kPi, 2.0 * kPi};
  return c;
}

MMSCase make_deg_fh_2d() {
  MMSCase c;
  c.id = MMSCaseId::deg_fh_2d;
  c.name = "deg-fh-2d";
  c.dim = 2;
  c.epsilon = 1.0;
  c.potential = {PotentialKind::regularized_flory_huggins, 2.0, 2.0, 1e-4, 10.0};
  c.mobility = {MobilityKind::clamped_degenerate, 1.0, 1e-4};
  c.default_scheme = SchemeKind::ieq1;
  c.default_t_final = 0.01;
  c.default_dt = {1e-3, 1e-4, 5e-6};
  c.lo_periodic = {0.0, 0.0};
  c.hi_periodic = {4.0 * kPi, 4.0 * kPi};
  c.lo_neumann = {-kPi, -kPi};
  c.hi_neumann = {3.0 * kPi, 3.0 * kPi};
  return c;
}

const MMSCase kCases[4] = {make_dw_1d(), make_dw_2d(), make_fh_2d(), make_deg_fh_2d()};

}  // namespace

MeshSpec MMSCase::mesh_spec(BoundaryKind bc, int cells_per_axis) const {
  if (bc == BoundaryKind::neumann && !supports_neumann)
    throw ConfigError("mms case " + name + " has no Neumann variant");
  MeshSpec spec;
  spec.dim = dim;
  spec.bc = bc;
  const auto& lo = bc == BoundaryKind::periodic ? lo_periodic : lo_neumann;
  const auto& hi = bc == BoundaryKind::periodic ? hi_periodic : hi_neumann;
  for (int a = 0; a < dim; ++a) {
    spec.lo[a] = lo[a];
    spec.hi[a] = hi[a];
    spec.cells[a] = cells_per_axis;
  }
  return spec;
}

const MMSCase& mms_case(const std::string& name) {
  for (const MMSCase& c : kCases)
    if (c.name == name) return c;
  throw ConfigError("unknown mms case '" + name + "' (expected dw-1d, dw-2d, fh-2d, deg-fh-2d)");
}

const MMSCase& mms_case(MMSCaseId id) { return kCases[static_cast<int>(id)]; }

double exact_solution(const MMSCase& c, const std::array<double, 2>& x, double t) {
  switch (c.id) {
    case MMSCaseId::dw_1d:
      return std::exp(-t) * std::sin(x[0]);
    case MMSCaseId::dw_2d:
      return 0.1 * std::exp(-t / 4.0) * std::sin(x[0] / 2.0) * std::sin(x[1] / 2.0);
    case MMSCaseId::fh_2d:
      return 0.1 * std::exp(-t / 4.0) * std::sin(x[0] / 4.0) * std::sin(x[1] / 4.0) + 0.5;
    case MMSCaseId::deg_fh_2d:
      return 0.4 * std::exp(-t / 4.0) * std::sin(x[0] / 2.0) * std::sin(x[1] / 2.0) + 0.5;
  }
  throw ConfigError("unknown mms case id");
}

std::array<double, 2> exact_gradient(const MMSCase& c, const std::array<double, 2>& x, double t) {
  switch (c.id) {
    case MMSCaseId::dw_1d:
      return {std::exp(-t) * std::cos(x[0]), 0.0};
    case MMSCaseId::dw_2d: {
      double a = 0.1 * std::exp(-t / 4.0);
      return {0.5 * a * std::cos(x[0] / 2.0) * std::sin(x[1] / 2.0),
              0.5 * a * std::sin(x[0] / 2.0) * std::cos(x[1] / 2.0)};
    }
    case MMSCaseId::fh_2d: {
      double a = 0.1 * std::exp(-t / 4.0);
      return {0.25 * a * std::cos(x[0] / 4.0) * std::sin(x[1] / 4.0),
              0.25 * a * std::sin(x[0] / 4.0) * std::cos(x[1] / 4.0)};
    }
    case MMSCaseId::deg_fh_2d: {
      double a = 0.4 * std::exp(-t / 4.0);
      return {0.5 * a * std::cos(x[0] / 2.0) * std::sin(x[1] / 2.0),
              0.5 * a * std::sin(x[0] / 2.0) * std::cos(x[1] / 2.0)};
    }
  }
  throw ConfigError("unknown mms case id");
}

double source_term(const MMSCase& c, const std::array<double, 2>& x, double t) {
  switch (c.id) {
    case MMSCaseId::dw_1d: {
      double et = std::exp(-t), e2t = std::exp(-2.0 * t);
      return -et * std::sin(x[0]) *
             (3.0 * e2t * std::cos(2.0 * x[0]) + 3.0 * e2t * std::cos(x[0]) * std::cos(x[0]) + 1.0);
    }
    case MMSCaseId::dw_2d: {
      double a = 0.1 * std::exp(-t / 4.0);
      double w = a * std::sin(x[0] / 2.0) * std::sin(x[1] / 2.0);
      double wx = a * std::cos(x[0] / 2.0) * std::sin(x[1] / 2.0);
      double wy = a * std::sin(x[0] / 2.0) * std::cos(x[1] / 2.0);
      double v = wx * wx + wy * wy;
      double e2 = c.epsilon * c.epsilon;
      return -w / 4.0 + e2 * w / 4.0 - 1.5 * w * v + 1.5 * w * w * w - w / 2.0;
    }
    case MMSCaseId::fh_2d: {
      double a = 0.1 * std::exp(-t / 4.0);
      double phi = a * std::sin(x[0] / 4.0) * std::sin(x[1] / 4.0);
      double u = phi + 0.5;
      double gx = 0.25 * a * std::cos(x[0] / 4.0) * std::sin(x[1] / 4.0);
      double gy = 0.25 * a * std::sin(x[0] / 4.0) * std::cos(x[1] / 4.0);
      double g2 = gx * gx + gy * gy;
      double e2 = c.epsilon * c.epsilon;
      return -phi / 4.0 + e2 * phi / 64.0 - fh2_d3(u) * g2 + fh2_d2(u) * phi / 8.0;
    }
    case MMSCaseId::deg_fh_2d: {
      double a = 0.4 * std::exp(-t / 4.0);
      double phi = a * std::sin(x[0] / 2.0) * std::sin(x[1] / 2.0);
      double u = phi + 0.5;
      double gx = 0.5 * a * std::cos(x[0] / 2.0) * std::sin(x[1] / 2.0);
      double gy = 0.5 * a * std::sin(x[0] / 2.0) * std::cos(x[1] / 2.0);
      double g2 = gx * gx + gy * gy;
      double e2 = c.epsilon * c.epsilon;
      double lap_w = -e2 * phi / 4.0 + fh2_d3(u) * g2 - fh2_d2(u) * phi / 2.0;
      return -phi / 4.0 - (1.0 - 2.0 * u) * (e2 / 2.0 + fh2_d2(u)) * g2 - u * (1.0 - u) * lap_w;
    }
  }
  throw ConfigError("unknown mms case id");
}

namespace {

// exact mobility / potential gradient used by the oracle (unclamped: the
// exact solutions stay inside (0, 1) where the variants coincide)
double oracle_mobility(const MMSCase& c, double u) {
  return c.mobility.kind == MobilityKind::constant ? c.mobility.value : u * (1.0 - u);
}

double oracle_fprime(const MMSCase& c, double u) {
  if (c.potential.kind == PotentialKind::double_well) return u * (u * u - 1.0);
  return 0.5 * c.potential.theta * (std::log(u) - std::log(1.0 - u)) +
         0.5 * c.potential.theta_c * (1.0 - 2.0 * u);
}

template <typename F>
double fd1(const F& f, double x, double h) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

template <typename F>
double fd2(const F& f, double x, double h) {
  return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)) /
         (12.0 * h * h);
}

}  // namespace

double residual_oracle(const MMSCase& c, BoundaryKind bc, const std::array<double, 2>& x,
                       double t) {
  const auto& lo = bc == BoundaryKind::periodic ? c.lo_periodic : c.lo_neumann;
  const auto& hi = bc == BoundaryKind::periodic ? c.hi_periodic : c.hi_neumann;
  double h[2] = {1e-3 * (hi[0] - lo[0]), c.dim == 2 ? 1e-3 * (hi[1] - lo[1]) : 0.0};

  auto u_at = [&](const std::array<double, 2>& p, double tt) { return exact_solution(c, p, tt); };

  // chemical potential w = -eps^2 lap u + F'(u), laplacian by stencil
  auto w_at = [&](const std::array<double, 2>& p) {
    double lap = 0.0;
    for (int a = 0; a < c.dim; ++a) {
      auto ua = [&](double s) {
        std::array<double, 2> q = p;
        q[a] = s;
        return u_at(q, t);
      };
      lap += fd2(ua, p[a], h[a]);
    }
    return -c.epsilon * c.epsilon * lap + oracle_fprime(c, u_at(p, t));
  };

  double div = 0.0;
  for (int a = 0; a < c.dim; ++a) {
    auto flux_a = [&](double s) {
      std::array<double, 2> q = x;
      q[a] = s;
      auto wa = [&](double r) {
        std::array<double, 2> qq = q;
        qq[a] = r;
        return w_at(qq);
      };
      return oracle_mobility(c, u_at(q, t)) * fd1(wa, q[a], h[a]);
    };
    div += fd1(flux_a, x[a], h[a]);
  }

  auto u_t = [&](double tt) { return u_at(x, tt); };
  return fd1(u_t, t, 1e-3) - div - source_term(c, x, t);
}

}  // namespace chdg
