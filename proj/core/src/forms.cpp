#include "chdg/forms.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "chdg/errors.hpp"

namespace chdg {

PenaltyConfig PenaltyConfig::make(const Mesh& mesh, double beta0) {
  if (!(beta0 > 0.0)) throw ConfigError("penalty: beta0 must be positive");
  return {beta0, mesh.tau()};
}

double default_beta0(int degree, bool constant_mobility) {
  double k = degree;
  return constant_mobility ? k * k + 0.5 * k : 3.0 * k * k + 0.5 * k;
}

int face_quad_count(const DGSpace& space) {
  return space.dim() == 1 ? 1 : space.quad_per_axis();
}

namespace {

// Traces of all modes of one cell on a face: values and normal (+axis)
// derivatives at each face quadrature node. side 0 = cell below the face
// (trace at its top end), side 1 = cell above (trace at its bottom end).
struct FaceTrace {
  // [node * m + j]
  std::vector<double> val;
  std::vector<double> dnu;
};

void face_trace(const DGSpace& s, const Face& f, int side, FaceTrace& out) {
  const int m = s.modes_per_cell();
  const int nq = face_quad_count(s);
  const int cell = side == 0 ? f.cell_minus : f.cell_plus;
  const int end = side == 0 ? 1 : 0;  // xi = +1 from below, -1 from above
  const int a = f.axis;
  const double jac = 2.0 / s.mesh().cell_width(cell, a);
  out.val.assign(nq * m, 0.0);
  out.dnu.assign(nq * m, 0.0);
  for (int t = 0; t < nq; ++t) {
    for (int j = 0; j < m; ++j) {
      auto mj = s.mode(j);
      double sa = s.scale(cell, a, mj[a]);
      double v = s.end_value(mj[a], end) * sa;
      double dv = s.end_deriv(mj[a], end) * jac * sa;
      if (s.dim() == 2) {
        int ta = 1 - a;
        double tv = s.ref_value(mj[ta], t) * s.scale(cell, ta, mj[ta]);
        v *= tv;
        dv *= tv;
      }
      out.val[t * m + j] = v;
      out.dnu[t * m + j] = dv;
    }
  }
}

double face_quad_weight(const DGSpace& s, const Face& f, int t) {
  if (s.dim() == 1) return 1.0;
  return 0.5 * (f.t_hi - f.t_lo) * s.rule().weights[t];
}

double face_weight_at(const WeightField& a, int face_index, int t) {
  return a.constant ? a.value : a.face[face_index][t];
}

double volume_weight_at(const WeightField& a, const DGSpace& s, int cell, int node) {
  return a.constant ? a.value : a.volume[s.global_node(cell, node)];
}

// gradient of mode j at volume node `node` of `cell`, axis g
double mode_grad(const DGSpace& s, int cell, int j, int i0, int i1, int g) {
  auto mj = s.mode(j);
  double v = 1.0;
  for (int a = 0; a < s.dim(); ++a) {
    int iq = a == 0 ? i0 : i1;
    double factor = a == g ? s.ref_deriv(mj[a], iq) * 2.0 / s.mesh().cell_width(cell, a)
                           : s.ref_value(mj[a], iq);
    v *= factor * s.scale(cell, a, mj[a]);
  }
  return v;
}

double mode_value(const DGSpace& s, int cell, int j, int i0, int i1) {
  auto mj = s.mode(j);
  double v = s.ref_value(mj[0], i0) * s.scale(cell, 0, mj[0]);
  if (s.dim() == 2) v *= s.ref_value(mj[1], i1) * s.scale(cell, 1, mj[1]);
  return v;
}

void check_positive(double a, const std::string& where) {
  if (!(a > 0.0))
    throw AssemblyError("assemble: nonpositive weight " + std::to_string(a) + " at " + where +
                        " (mobility regularization failed?)");
}

using Triplets = std::vector<Eigen::Triplet<double>>;

void add_volume_gradient(const DGSpace& s, const WeightField& a, bool check, Triplets& trip) {
  const int m = s.modes_per_cell();
  const int q = s.quad_per_axis();
  const int d = s.dim();
  Eigen::MatrixXd local(m, m);
  std::vector<double> grad(m * d);
  for (int cell = 0; cell < s.num_cells(); ++cell) {
    local.setZero();
    for (int node = 0; node < s.nodes_per_cell(); ++node) {
      int i0 = node % q, i1 = node / q;
      double av = volume_weight_at(a, s, cell, node);
      if (check) check_positive(av, "volume node of cell " + std::to_string(cell));
      double w = s.node_weight(cell, node) * av;
      for (int j = 0; j < m; ++j)
        for (int g = 0; g < d; ++g) grad[j * d + g] = mode_grad(s, cell, j, i0, i1, g);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double dot = 0.0;
          for (int g = 0; g < d; ++g) dot += grad[i * d + g] * grad[j * d + g];
          local(i, j) += w * dot;
        }
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        trip.emplace_back(s.global_dof(cell, i), s.global_dof(cell, j), local(i, j));
  }
}

}  // namespace

std::vector<Eigen::VectorXd> face_average_values(const DGField& u) {
  const DGSpace& s = *u.space;
  const int m = s.modes_per_cell();
  const int nq = face_quad_count(s);
  const auto& faces = s.mesh().interior_faces();
  std::vector<Eigen::VectorXd> out(faces.size());
  FaceTrace tr0, tr1;
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    face_trace(s, f, 0, tr0);
    face_trace(s, f, 1, tr1);
    const double* cm = u.coeffs.data() + f.cell_minus * m;
    const double* cp = u.coeffs.data() + f.cell_plus * m;
    Eigen::VectorXd avg(nq);
    for (int t = 0; t < nq; ++t) {
      double vm = 0.0, vp = 0.0;
      for (int j = 0; j < m; ++j) {
        vm += cm[j] * tr0.val[t * m + j];
        vp += cp[j] * tr1.val[t * m + j];
      }
      avg[t] = 0.5 * (vm + vp);
    }
    out[fi] = std::move(avg);
  }
  return out;
}

WeightField pointwise_weight(const DGField& u, const std::function<double(double)>& g) {
  WeightField w;
  w.constant = false;
  w.volume = field_node_values(u);
  for (int i = 0; i < w.volume.size(); ++i) w.volume[i] = g(w.volume[i]);
  auto avgs = face_average_values(u);
  w.face.resize(avgs.size());
  for (std::size_t fi = 0; fi < avgs.size(); ++fi) {
    w.face[fi] = avgs[fi];
    for (int t = 0; t < w.face[fi].size(); ++t) w.face[fi][t] = g(w.face[fi][t]);
  }
  return w;
}

SparseOperator assemble_bilinear(const DGSpace& s, const WeightField& a,
                                 const PenaltyConfig& cfg) {
  if (a.constant) check_positive(a.value, "constant weight");
  const int m = s.modes_per_cell();
  const int n = s.dofs();
  const int nq = face_quad_count(s);

  Triplets trip;
  trip.reserve(static_cast<std::size_t>(s.num_cells()) * m * m +
               s.mesh().interior_faces().size() * 4 * m * m);
  add_volume_gradient(s, a, !a.constant, trip);

  const auto& faces = s.mesh().interior_faces();
  FaceTrace tr[2];
  Eigen::MatrixXd local(2 * m, 2 * m);
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    face_trace(s, f, 0, tr[0]);
    face_trace(s, f, 1, tr[1]);
    const double pen = cfg.beta0 / f.h_e;
    local.setZero();
    for (int t = 0; t < nq; ++t) {
      double av = face_weight_at(a, static_cast<int>(fi), t);
      if (!a.constant) check_positive(av, "face node of face " + std::to_string(fi));
      double w = face_quad_weight(s, f, t) * av;
      for (int si = 0; si < 2; ++si)
        for (int sj = 0; sj < 2; ++sj) {
          double sgn_i = si == 0 ? -1.0 : 1.0;
          double sgn_j = sj == 0 ? -1.0 : 1.0;
          for (int i = 0; i < m; ++i) {
            double vi = tr[si].val[t * m + i];
            double di = tr[si].dnu[t * m + i];
            for (int j = 0; j < m; ++j) {
              double vj = tr[sj].val[t * m + j];
              double dj = tr[sj].dnu[t * m + j];
              local(si * m + i, sj * m + j) +=
                  w * (pen * sgn_i * sgn_j * vi * vj + 0.5 * (sgn_i * vi * dj + sgn_j * vj * di));
            }
          }
        }
    }
    const int cells[2] = {f.cell_minus, f.cell_plus};
    for (int si = 0; si < 2; ++si)
      for (int sj = 0; sj < 2; ++sj)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            trip.emplace_back(s.global_dof(cells[si], i), s.global_dof(cells[sj], j),
                              local(si * m + i, sj * m + j));
  }

  SparseOperator op;
  op.mat.resize(n, n);
  op.mat.setFromTriplets(trip.begin(), trip.end());
  op.mat.makeCompressed();
  return op;
}

SparseOperator assemble_weighted_mass(const DGSpace& s, const Eigen::VectorXd& nodal_weight) {
  const int m = s.modes_per_cell();
  const int q = s.quad_per_axis();
  Triplets trip;
  trip.reserve(static_cast<std::size_t>(s.num_cells()) * m * m);
  Eigen::MatrixXd local(m, m);
  std::vector<double> phi(m);
  for (int cell = 0; cell < s.num_cells(); ++cell) {
    local.setZero();
    for (int node = 0; node < s.nodes_per_cell(); ++node) {
      int i0 = node % q, i1 = node / q;
      double w = s.node_weight(cell, node) * nodal_weight[s.global_node(cell, node)];
      for (int j = 0; j < m; ++j) phi[j] = mode_value(s, cell, j, i0, i1);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) local(i, j) += w * phi[i] * phi[j];
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        trip.emplace_back(s.global_dof(cell, i), s.global_dof(cell, j), local(i, j));
  }
  SparseOperator op;
  op.mat.resize(s.dofs(), s.dofs());
  op.mat.setFromTriplets(trip.begin(), trip.end());
  op.mat.makeCompressed();
  return op;
}

SparseOperator assemble_volume_gradient(const DGSpace& s, const WeightField& a) {
  Triplets trip;
  add_volume_gradient(s, a, false, trip);
  SparseOperator op;
  op.mat.resize(s.dofs(), s.dofs());
  op.mat.setFromTriplets(trip.begin(), trip.end());
  op.mat.makeCompressed();
  return op;
}

SparseOperator assemble_face_normal_form(const DGSpace& s, const WeightField& a, int /*tau*/) {
  // boundary faces only exist under Neumann (tau = 0) where they drop out,
  // so the sum runs over interior faces either way
  const int m = s.modes_per_cell();
  const int nq = face_quad_count(s);
  Triplets trip;
  const auto& faces = s.mesh().interior_faces();
  FaceTrace tr[2];
  Eigen::MatrixXd local(2 * m, 2 * m);
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    face_trace(s, f, 0, tr[0]);
    face_trace(s, f, 1, tr[1]);
    local.setZero();
    for (int t = 0; t < nq; ++t) {
      double w = face_quad_weight(s, f, t) * face_weight_at(a, static_cast<int>(fi), t) * f.h_e;
      for (int si = 0; si < 2; ++si)
        for (int sj = 0; sj < 2; ++sj)
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
              local(si * m + i, sj * m + j) +=
                  w * 0.25 * tr[si].dnu[t * m + i] * tr[sj].dnu[t * m + j];
    }
    const int cells[2] = {f.cell_minus, f.cell_plus};
    for (int si = 0; si < 2; ++si)
      for (int sj = 0; sj < 2; ++sj)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            trip.emplace_back(s.global_dof(cells[si], i), s.global_dof(cells[sj], j),
                              local(si * m + i, sj * m + j));
  }
  SparseOperator op;
  op.mat.resize(s.dofs(), s.dofs());
  op.mat.setFromTriplets(trip.begin(), trip.end());
  op.mat.makeCompressed();
  return op;
}

double dg_norm_sq(const DGField& v, const PenaltyConfig& cfg) {
  const DGSpace& s = *v.space;
  const int m = s.modes_per_cell();
  const int q = s.quad_per_axis();
  const int d = s.dim();
  double sum = 0.0;
  for (int cell = 0; cell < s.num_cells(); ++cell) {
    const double* c = v.coeffs.data() + cell * m;
    for (int node = 0; node < s.nodes_per_cell(); ++node) {
      int i0 = node % q, i1 = node / q;
      double g2 = 0.0;
      for (int g = 0; g < d; ++g) {
        double gv = 0.0;
        for (int j = 0; j < m; ++j) gv += c[j] * mode_grad(s, cell, j, i0, i1, g);
        g2 += gv * gv;
      }
      sum += s.node_weight(cell, node) * g2;
    }
  }
  const int nq = face_quad_count(s);
  FaceTrace tr0, tr1;
  for (const Face& f : s.mesh().interior_faces()) {
    face_trace(s, f, 0, tr0);
    face_trace(s, f, 1, tr1);
    const double* cm = v.coeffs.data() + f.cell_minus * m;
    const double* cp = v.coeffs.data() + f.cell_plus * m;
    for (int t = 0; t < nq; ++t) {
      double jump = 0.0;
      for (int j = 0; j < m; ++j) jump += cp[j] * tr1.val[t * m + j] - cm[j] * tr0.val[t * m + j];
      sum += face_quad_weight(s, f, t) * (cfg.beta0 / f.h_e) * jump * jump;
    }
  }
  return sum;
}

BetaStarEstimate estimate_beta_star(const DGSpace& space, const WeightField& a, int tau) {
  if (space.dofs() > 4096)
    throw ConfigError("estimate_beta_star: dense eigensolve capped at 4096 dofs, got " +
                      std::to_string(space.dofs()));
  Eigen::MatrixXd B = Eigen::MatrixXd(assemble_face_normal_form(space, a, tau).mat);
  Eigen::MatrixXd G = Eigen::MatrixXd(assemble_volume_gradient(space, a).mat);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  double lmax = es.eigenvalues().maxCoeff();
  if (!(lmax > 0.0)) return {0.0, true};
  double cutoff = 1e-10 * lmax;
  std::vector<int> keep;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > cutoff) keep.push_back(i);
  if (keep.empty()) return {0.0, true};

  Eigen::MatrixXd W(space.dofs(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    W.col(c) = es.eigenvectors().col(keep[c]) / std::sqrt(es.eigenvalues()[keep[c]]);
  Eigen::MatrixXd R = W.transpose() * B * W;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> er(0.5 * (R + R.transpose()));
  return {er.eigenvalues().maxCoeff(), false};
}

}  // namespace chdg
