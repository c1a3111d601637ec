#ifndef CHDG_STEPPER_HPP
#define CHDG_STEPPER_HPP

#include <Eigen/SparseLU>
#include <optional>

#include "chdg/forms.hpp"
#include "chdg/physics.hpp"

namespace chdg {

using SourceFunction = std::function<double(const std::array<double, 2>&, double)>;

enum class SchemeKind { ieq1, ieq2 };

// One time level of either scheme. u and the projected auxiliary U_h live in
// the DG space; U keeps the unprojected auxiliary at the quadrature nodes so
// the per-step energy identity can be evaluated before projection. BDF2
// steps additionally consume the (u, U_h) pair one level back.
struct SchemeState {
  double time = 0.0;
  long step = 0;
  double dt = 0.0;
  DGField u;
  AuxField U;
  DGField U_h;
  DGField w;
  std::optional<DGField> u_prev;
  std::optional<DGField> U_h_prev;

  bool has_history() const { return u_prev.has_value() && U_h_prev.has_value(); }
};

// Per-step byproducts: the signed residual of the discrete energy identity
// (first order: the four-term balance; BDF2: the five-term regrouped
// balance), the dissipation dt*A(M; w, w), the work injected by a
// manufactured source, and solver bookkeeping.
struct StepReport {
  double identity_residual = 0.0;
  double dissipation = 0.0;
  double source_work = 0.0;
  double solver_residual = 0.0;
  bool refactorized = false;
};

// Direct solve of the coupled block system
//   [ c*I         A_M ] [u]   [r1]
//   [ A_eps + W   -I  ] [w] = [r2]
// by sparse LU on the full 2n x 2n matrix. The symbolic analysis is done
// once (the pattern is step-invariant); values are refactorized whenever
// they change, and an unchanged matrix reuses the previous factorization.
class CoupledSolver {
 public:
  struct Solution {
    Eigen::VectorXd u, w;
    double rel_residual = 0.0;
    bool refactorized = false;
  };

  // rel residual above this throws SolverError
  static constexpr double kResidualTol = 1e-10;

  Solution solve(double c_diag, const Eigen::SparseMatrix<double>& a_m,
                 const Eigen::SparseMatrix<double>& lower_left, const Eigen::VectorXd& r1,
                 const Eigen::VectorXd& r2);

 private:
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  Eigen::SparseMatrix<double> sys_;
  Eigen::VectorXd prev_values_;
  bool analyzed_ = false;
};

struct SchemeParams {
  PotentialSpec potential;
  MobilitySpec mobility;
  double epsilon = 1.0;
  PenaltyConfig penalty;
};

// First-order IEQ-DG and BDF2 IEQ-DG stepping. Both schemes assemble the
// mobility form at the frozen state (u^n, or the extrapolant 2u^n - u^{n-1}),
// solve one linear system, update the auxiliary pointwise at the quadrature
// nodes, and project it back into the DG space.
class IEQStepper {
 public:
  IEQStepper(const DGSpace& space, const SchemeParams& params);

  // u_h^0 = Pi u0, U^0 = sqrt(F(u0) + B), U_h^0 = Pi U^0.
  SchemeState init_state(const PointFunction& u0, double dt) const;

  StepReport step_ieq1(SchemeState& state, const SourceFunction* source = nullptr);

  // Requires history (populate it with one step_ieq1). Throws UsageError
  // otherwise.
  StepReport step_ieq2(SchemeState& state, const SourceFunction* source = nullptr);

  const DGSpace& space() const { return *space_; }
  const SchemeParams& params() const { return params_; }
  const SparseOperator& a_eps() const { return a_eps_; }

 private:
  const SparseOperator& mobility_operator(const DGField& frozen);

  const DGSpace* space_;
  SchemeParams params_;
  SparseOperator a_eps_;                     // A(eps^2; ., .)
  std::optional<SparseOperator> a_m_const_;  // fixed when mobility is constant
  SparseOperator a_m_scratch_;               // reassembled per step otherwise
  CoupledSolver solver_;
};

}  // namespace chdg

#endif
