#include "chdg/stepper.hpp"

#include <cmath>
#include <string>

#include "chdg/errors.hpp"

namespace chdg {

CoupledSolver::Solution CoupledSolver::solve(double c_diag, const Eigen::SparseMatrix<double>& a_m,
                                             const Eigen::SparseMatrix<double>& lower_left,
                                             const Eigen::VectorXd& r1,
                                             const Eigen::VectorXd& r2) {
  const int n = static_cast<int>(a_m.rows());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(a_m.nonZeros()) + lower_left.nonZeros() + 2 * n);
  for (int i = 0; i < n; ++i) trip.emplace_back(i, i, c_diag);
  for (int col = 0; col < a_m.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a_m, col); it; ++it)
      trip.emplace_back(static_cast<int>(it.row()), n + col, it.value());
  for (int col = 0; col < lower_left.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(lower_left, col); it; ++it)
      trip.emplace_back(n + static_cast<int>(it.row()), col, it.value());
  for (int i = 0; i < n; ++i) trip.emplace_back(n + i, n + i, -1.0);

  sys_.resize(2 * n, 2 * n);
  sys_.setFromTriplets(trip.begin(), trip.end());
  sys_.makeCompressed();

  Solution sol;
  const Eigen::Map<const Eigen::VectorXd> values(sys_.valuePtr(), sys_.nonZeros());
  const bool same_values = analyzed_ && prev_values_.size() == values.size() &&
                           (prev_values_.array() == values.array()).all();
  if (!analyzed_) {
    lu_.analyzePattern(sys_);
    analyzed_ = true;
  }
  if (!same_values) {
    lu_.factorize(sys_);
    if (lu_.info() != Eigen::Success)
      throw SolverError(
          "coupled solve: LU factorization failed (singular system; beta0 below the coercivity "
          "threshold or vanishing mobility?)");
    prev_values_ = values;
    sol.refactorized = true;
  }

  Eigen::VectorXd rhs(2 * n);
  rhs.head(n) = r1;
  rhs.tail(n) = r2;
  Eigen::VectorXd x = lu_.solve(rhs);
  double bnorm = rhs.norm();
  sol.rel_residual = bnorm > 0.0 ? (sys_ * x - rhs).norm() / bnorm : 0.0;
  if (!(sol.rel_residual <= kResidualTol))
    throw SolverError("coupled solve: relative residual " + std::to_string(sol.rel_residual) +
                      " above tolerance");
  sol.u = x.head(n);
  sol.w = x.tail(n);
  return sol;
}

IEQStepper::IEQStepper(const DGSpace& space, const SchemeParams& params)
    : space_(&space), params_(params) {
  a_eps_ = assemble_bilinear(space, WeightField::uniform(params.epsilon * params.epsilon),
                             params_.penalty);
  if (params_.mobility.is_constant())
    a_m_const_ =
        assemble_bilinear(space, WeightField::uniform(params_.mobility.value), params_.penalty);
}

SchemeState IEQStepper::init_state(const PointFunction& u0, double dt) const {
  if (!(dt > 0.0)) throw ConfigError("stepper: dt must be positive");
  SchemeState st;
  st.dt = dt;
  st.u = l2_project(*space_, u0);
  st.U = init_aux(params_.potential, u0, *space_);
  st.U_h = l2_project(st.U);
  st.w = DGField::zero(*space_);
  return st;
}

const SparseOperator& IEQStepper::mobility_operator(const DGField& frozen) {
  if (a_m_const_) return *a_m_const_;
  const MobilitySpec& mob = params_.mobility;
  a_m_scratch_ = assemble_bilinear(
      *space_, pointwise_weight(frozen, [&](double u) { return eval_mobility(mob, u); }),
      params_.penalty);
  return a_m_scratch_;
}

StepReport IEQStepper::step_ieq1(SchemeState& state, const SourceFunction* source) {
  const DGSpace& s = *space_;
  const double dt = state.dt;
  const double t_next = state.time + dt;

  Eigen::VectorXd u_nodal = field_node_values(state.u);
  Eigen::VectorXd uh_nodal = field_node_values(state.U_h);
  const int nn = s.num_nodes();
  Eigen::VectorXd h_nodal(nn), half_h2(nn);
  for (int i = 0; i < nn; ++i) {
    h_nodal[i] = eval_H(params_.potential, u_nodal[i]);
    half_h2[i] = 0.5 * h_nodal[i] * h_nodal[i];
  }

  const SparseOperator& a_m = mobility_operator(state.u);
  SparseOperator w_mass = assemble_weighted_mass(s, half_h2);
  Eigen::SparseMatrix<double> lower = a_eps_.mat + w_mass.mat;

  Eigen::VectorXd r1 = state.u.coeffs / dt;
  Eigen::VectorXd source_coeffs;
  if (source) {
    source_coeffs =
        l2_project(s, [&](const std::array<double, 2>& x) { return (*source)(x, t_next); }).coeffs;
    r1 += source_coeffs;
  }
  Eigen::VectorXd r2_nodal =
      (half_h2.array() * u_nodal.array() - h_nodal.array() * uh_nodal.array()).matrix();
  Eigen::VectorXd r2 = project_nodal(s, r2_nodal).coeffs;

  auto sol = solver_.solve(1.0 / dt, a_m.mat, lower, r1, r2);

  DGField u_new{&s, sol.u};
  DGField w_new{&s, sol.w};
  Eigen::VectorXd u_new_nodal = field_node_values(u_new);
  Eigen::VectorXd U_new =
      uh_nodal + (0.5 * h_nodal.array() * (u_new_nodal - u_nodal).array()).matrix();

  StepReport rep;
  rep.solver_residual = sol.rel_residual;
  rep.refactorized = sol.refactorized;
  rep.dissipation = dt * a_m.quad_form(sol.w);
  rep.source_work = source ? dt * source_coeffs.dot(sol.w) : 0.0;
  {
    // identity: E(u^{n+1}, U^{n+1}) - E^n + dt A(M; w, w)
    //           + 1/2 A(eps^2; du, du) + ||U^{n+1} - U_h^n||^2 - dt (s, w) = 0
    double e_pre = 0.5 * a_eps_.quad_form(state.u.coeffs) + state.U_h.coeffs.squaredNorm();
    double e_post = 0.5 * a_eps_.quad_form(sol.u) + nodal_inner(s, U_new, U_new);
    Eigen::VectorXd du = sol.u - state.u.coeffs;
    Eigen::VectorXd dU = U_new - uh_nodal;
    rep.identity_residual = e_post - e_pre + rep.dissipation + 0.5 * a_eps_.quad_form(du) +
                            nodal_inner(s, dU, dU) - rep.source_work;
  }

  state.u_prev = std::move(state.u);
  state.U_h_prev = std::move(state.U_h);
  state.u = std::move(u_new);
  state.w = std::move(w_new);
  state.U = AuxField{&s, std::move(U_new)};
  state.U_h = l2_project(state.U);
  state.time = t_next;
  state.step += 1;
  return rep;
}

StepReport IEQStepper::step_ieq2(SchemeState& state, const SourceFunction* source) {
  if (!state.has_history())
    throw UsageError("step_ieq2: missing history; take one first-order step first");
  const DGSpace& s = *space_;
  const double dt = state.dt;
  const double t_next = state.time + dt;

  DGField u_star{&s, 2.0 * state.u.coeffs - state.u_prev->coeffs};
  Eigen::VectorXd ustar_nodal = field_node_values(u_star);
  Eigen::VectorXd u_nodal = field_node_values(state.u);
  Eigen::VectorXd uprev_nodal = field_node_values(*state.u_prev);
  Eigen::VectorXd uh_nodal = field_node_values(state.U_h);
  Eigen::VectorXd uhprev_nodal = field_node_values(*state.U_h_prev);

  const int nn = s.num_nodes();
  Eigen::VectorXd h_nodal(nn), half_h2(nn);
  for (int i = 0; i < nn; ++i) {
    h_nodal[i] = eval_H(params_.potential, ustar_nodal[i]);
    half_h2[i] = 0.5 * h_nodal[i] * h_nodal[i];
  }

  const SparseOperator& a_m = mobility_operator(u_star);
  SparseOperator w_mass = assemble_weighted_mass(s, half_h2);
  Eigen::SparseMatrix<double> lower = a_eps_.mat + w_mass.mat;

  Eigen::VectorXd hist_coeffs = 4.0 * state.u.coeffs - state.u_prev->coeffs;
  Eigen::VectorXd r1 = hist_coeffs / (2.0 * dt);
  Eigen::VectorXd source_coeffs;
  if (source) {
    source_coeffs =
        l2_project(s, [&](const std::array<double, 2>& x) { return (*source)(x, t_next); }).coeffs;
    r1 += source_coeffs;
  }
  Eigen::VectorXd hist_u_nodal = (4.0 * u_nodal - uprev_nodal) / 3.0;
  Eigen::VectorXd hist_uh_nodal = (4.0 * uh_nodal - uhprev_nodal) / 3.0;
  Eigen::VectorXd r2_nodal =
      (half_h2.array() * hist_u_nodal.array() - h_nodal.array() * hist_uh_nodal.array()).matrix();
  Eigen::VectorXd r2 = project_nodal(s, r2_nodal).coeffs;

  auto sol = solver_.solve(1.5 / dt, a_m.mat, lower, r1, r2);

  DGField u_new{&s, sol.u};
  Eigen::VectorXd u_new_nodal = field_node_values(u_new);
  Eigen::VectorXd U_new =
      hist_uh_nodal +
      (0.5 * h_nodal.array() * (u_new_nodal - hist_u_nodal).array()).matrix();

  StepReport rep;
  rep.solver_residual = sol.rel_residual;
  rep.refactorized = sol.refactorized;
  rep.dissipation = dt * a_m.quad_form(sol.w);
  rep.source_work = source ? dt * source_coeffs.dot(sol.w) : 0.0;
  {
    // regrouped BDF2 balance: with ustar2 = 2u^{n+1} - u^n,
    //   1/2 A(u^{n+1}) + 1/2 A(ustar2) + ||U^{n+1}||^2 + ||2U^{n+1} - U_h^n||^2
    //   = 2 Ebar^n - 2 dt A(M*; w, w) + 2 dt (s, w)
    //     - 1/2 A(u^{n+1} - u^{n,*}) - ||U^{n+1} - U_h^{n,*}||^2
    Eigen::VectorXd uhstar = 2.0 * state.U_h.coeffs - state.U_h_prev->coeffs;
    double ebar2 = 0.5 * a_eps_.quad_form(state.u.coeffs) + state.U_h.coeffs.squaredNorm() +
                   0.5 * a_eps_.quad_form(u_star.coeffs) + uhstar.squaredNorm();
    Eigen::VectorXd ustar2 = 2.0 * sol.u - state.u.coeffs;
    Eigen::VectorXd u2_nodal = 2.0 * U_new - uh_nodal;
    Eigen::VectorXd uhstar_nodal = 2.0 * uh_nodal - uhprev_nodal;
    Eigen::VectorXd dstar = sol.u - u_star.coeffs;
    Eigen::VectorXd dU = U_new - uhstar_nodal;
    double lhs = 0.5 * a_eps_.quad_form(sol.u) + 0.5 * a_eps_.quad_form(ustar2) +
                 nodal_inner(s, U_new, U_new) + nodal_inner(s, u2_nodal, u2_nodal);
    double rhs = ebar2 - 2.0 * rep.dissipation + 2.0 * rep.source_work -
                 0.5 * a_eps_.quad_form(dstar) - nodal_inner(s, dU, dU);
    rep.identity_residual = lhs - rhs;
  }

  state.u_prev = std::move(state.u);
  state.U_h_prev = std::move(state.U_h);
  state.u = std::move(u_new);
  state.w = DGField{&s, std::move(sol.w)};
  state.U = AuxField{&s, std::move(U_new)};
  state.U_h = l2_project(state.U);
  state.time = t_next;
  state.step += 1;
  return rep;
}

}  // namespace chdg
