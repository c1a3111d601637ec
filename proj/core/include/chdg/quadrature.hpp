#ifndef CHDG_QUADRATURE_HPP
#define CHDG_QUADRATURE_HPP

#include <vector>

namespace chdg {

// Gauss-Legendre rule on the reference interval [-1, 1].
// Exact for polynomials of degree <= 2q - 1; weights positive, sum to 2.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

// q in [1, 20]; throws ConfigError otherwise.
GaussRule gauss_rule(int q);

// Legendre polynomial values P_0..P_k and derivatives dP_0..dP_k at xi in [-1, 1].
// Output arrays must hold k+1 entries.
void legendre_all(int k, double xi, double* values, double* derivs);

}  // namespace chdg

#endif
