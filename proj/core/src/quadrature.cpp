#include "chdg/quadrature.hpp"

#include <cmath>
#include <string>

#include "chdg/errors.hpp"

namespace chdg {

void legendre_all(int k, double xi, double* values, double* derivs) {
  values[0] = 1.0;
  if (derivs) derivs[0] = 0.0;
  if (k == 0) return;
  values[1] = xi;
  if (derivs) derivs[1] = 1.0;
  for (int n = 1; n < k; ++n) {
    values[n + 1] = ((2 * n + 1) * xi * values[n] - n * values[n - 1]) / (n + 1);
    if (derivs) derivs[n + 1] = derivs[n - 1] + (2 * n + 1) * values[n];
  }
}

GaussRule gauss_rule(int q) {
  if (q < 1 || q > 20)
    throw ConfigError("gauss_rule: point count " + std::to_string(q) + " outside [1, 20]");

  GaussRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);

  // Newton iteration on the roots of P_q, starting from the Chebyshev guess.
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = -std::cos(M_PI * (i + 0.75) / (q + 0.25));
    double p = 0.0, dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // p = P_q(x), dp = P_q'(x) by recurrence
      double p0 = 1.0, p1 = x;
      for (int n = 1; n < q; ++n) {
        double p2 = ((2 * n + 1) * x * p1 - n * p0) / (n + 1);
        p0 = p1;
        p1 = p2;
      }
      p = p1;
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = -p / dp;
      x += dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = x;
    rule.weights[i] = w;
    rule.nodes[q - 1 - i] = -x;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) {
    // midpoint node of odd rules is exactly zero
    rule.nodes[q / 2] = 0.0;
    double p0 = 1.0, p1 = 0.0;
    for (int n = 1; n < q; ++n) {
      double p2 = (-n * p0) / (n + 1);
      p0 = p1;
      p1 = p2;
    }
    double dp = q * (-p0) / (-1.0);
    rule.weights[q / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

}  // namespace chdg
