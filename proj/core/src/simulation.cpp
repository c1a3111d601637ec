#include "chdg/simulation.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "chdg/errors.hpp"

namespace chdg {

const char* const kDiagnosticsHeader =
    "step,t,mass,energy_original,energy_quadratized,energy_modified,identity_residual,dgnorm_w";

DGField random_ic(const DGSpace& space, double base, double amplitude, std::uint64_t seed) {
  const Mesh& mesh = space.mesh();
  const int nc = mesh.num_cells();
  std::mt19937_64 gen(seed);
  std::vector<double> r(nc);
  for (int i = 0; i < nc; ++i)
    r[i] = 2.0 * (static_cast<double>(gen() >> 11) / 9007199254740992.0) - 1.0;  // [-1, 1)

  // two-pass volume-weighted recentering: sum_K r_K |K| = 0 to roundoff
  for (int pass = 0; pass < 2; ++pass) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < nc; ++i) {
      num += r[i] * mesh.cell_measure(i);
      den += mesh.cell_measure(i);
    }
    double mean = num / den;
    for (int i = 0; i < nc; ++i) r[i] -= mean;
  }

  DGField field = DGField::zero(space);
  for (int i = 0; i < nc; ++i)
    field.coeffs[space.global_dof(i, 0)] =
        (base + amplitude * r[i]) * std::sqrt(mesh.cell_measure(i));
  return field;
}

namespace {

void print_row(std::FILE* f, const DiagnosticsRecord& r) {
  std::fprintf(f, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.step, r.time, r.mass,
               r.energy_original, r.energy_quadratized, r.energy_modified, r.identity_residual,
               r.dgnorm_w);
}

}  // namespace

void append_diagnostics_row(std::ostream& out, const DiagnosticsRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.step, r.time,
                r.mass, r.energy_original, r.energy_quadratized, r.energy_modified,
                r.identity_residual, r.dgnorm_w);
  out << buf;
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ConfigError("write_diagnostics_csv: cannot open '" + path + "'");
  std::fprintf(f, "%s\n", kDiagnosticsHeader);
  for (const auto& r : records) print_row(f, r);
  std::fclose(f);
}

void write_snapshot_csv(const std::string& path, const DGField& u, int points_per_axis) {
  const DGSpace& s = *u.space;
  const Mesh& mesh = s.mesh();
  const int d = s.dim();
  const int p = points_per_axis < 1 ? 1 : points_per_axis;
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ConfigError("write_snapshot_csv: cannot open '" + path + "'");
  std::fprintf(f, d == 1 ? "cell_i,x,value\n" : "cell_i,cell_j,x,y,value\n");
  const int per_cell = d == 1 ? p : p * p;
  for (int cell = 0; cell < mesh.num_cells(); ++cell) {
    auto cc = mesh.cell_coords(cell);
    for (int pt = 0; pt < per_cell; ++pt) {
      int idx[2] = {pt % p, pt / p};
      std::array<double, 2> x{0.0, 0.0};
      for (int a = 0; a < d; ++a)
        x[a] = mesh.cell_lo(cell, a) + mesh.cell_width(cell, a) * (idx[a] + 0.5) / p;
      double v = field_eval(u, cell, x);
      if (d == 1)
        std::fprintf(f, "%d,%.17g,%.17g\n", cc[0], x[0], v);
      else
        std::fprintf(f, "%d,%d,%.17g,%.17g,%.17g\n", cc[0], cc[1], x[0], x[1], v);
    }
  }
  std::fclose(f);
}

namespace {

PointFunction make_ic_function(const RunConfig& cfg, const DGField* random_field) {
  switch (cfg.ic.kind) {
    case InitialCondition::Kind::mms: {
      const MMSCase& c = mms_case(cfg.ic.mms_case);
      return [&c](const std::array<double, 2>& x) { return exact_solution(c, x, 0.0); };
    }
    case InitialCondition::Kind::constant_regions: {
      InitialCondition ic = cfg.ic;
      int dim = cfg.mesh.dim;
      return [ic, dim](const std::array<double, 2>& x) {
        for (const RegionIC& r : ic.regions) {
          bool inside = true;
          for (int a = 0; a < dim; ++a)
            if (x[a] < r.lo[a] || x[a] > r.hi[a]) inside = false;
          if (inside) return r.value;
        }
        return ic.background;
      };
    }
    case InitialCondition::Kind::random_perturbation: {
      const DGField* f = random_field;
      const Mesh* mesh = &f->space->mesh();
      return [f, mesh](const std::array<double, 2>& x) {
        // locate the cell (uniform axes) and return its constant value
        int idx[2] = {0, 0};
        for (int a = 0; a < mesh->dim(); ++a) {
          int n = mesh->cells_along(a);
          double rel = (x[a] - mesh->domain_lo(a)) / (mesh->domain_hi(a) - mesh->domain_lo(a));
          idx[a] = std::min(n - 1, std::max(0, static_cast<int>(rel * n)));
        }
        int cell = mesh->cell_index(idx[0], idx[1]);
        return f->coeffs[f->space->global_dof(cell, 0)] /
               std::sqrt(mesh->cell_measure(cell));
      };
    }
  }
  throw ConfigError("unknown initial condition kind");
}

}  // namespace

RunResult run_simulation(const RunConfig& cfg, std::ostream* log) {
  RunResult result;
  const Mesh mesh = Mesh::build(cfg.mesh);
  const DGSpace space(mesh, cfg.degree, cfg.quad_points);

  SchemeParams params;
  params.epsilon = cfg.epsilon;
  params.potential = cfg.potential;
  params.mobility = cfg.mobility;
  params.penalty = PenaltyConfig::make(mesh, cfg.resolved_beta0());
  IEQStepper stepper(space, params);

  const MMSCase* mcase =
      cfg.ic.kind == InitialCondition::Kind::mms ? &mms_case(cfg.ic.mms_case) : nullptr;
  std::optional<SourceFunction> source;
  if (mcase)
    source = [mcase](const std::array<double, 2>& x, double t) {
      return source_term(*mcase, x, t);
    };

  std::optional<DGField> random_field;
  if (cfg.ic.kind == InitialCondition::Kind::random_perturbation)
    random_field = random_ic(space, cfg.ic.base, cfg.ic.amplitude, cfg.seed);
  PointFunction u0 = make_ic_function(cfg, random_field ? &*random_field : nullptr);

  SchemeState state = stepper.init_state(u0, cfg.dt);
  if (random_field) state.u = *random_field;  // already in V_h, skip the projection

  std::filesystem::create_directories(cfg.output_dir);
  const std::string diag_path = cfg.output_dir + "/diagnostics.csv";
  std::ofstream diag(diag_path);
  if (!diag) throw ConfigError("run: cannot open '" + diag_path + "'");
  diag << kDiagnosticsHeader << "\n";

  auto record_state = [&](const StepReport* rep) {
    DiagnosticsRecord rec = energies(state, stepper.a_eps(), params.potential);
    if (rep) {
      rec.identity_residual = rep->identity_residual;
      rec.dgnorm_w = dg_norm_sq(state.w, params.penalty);
    }
    result.records.push_back(rec);
    append_diagnostics_row(diag, rec);
    diag.flush();
    return rec;
  };

  DiagnosticsRecord rec0 = record_state(nullptr);
  const double mass0 = rec0.mass;
  const double e0 = std::abs(rec0.energy_quadratized);
  result.min_energy = result.max_energy = rec0.energy_quadratized;

  double prev_equad = rec0.energy_quadratized;
  double prev_ebar = rec0.energy_modified;  // valid from step 1 on (ieq2)
  double expected_mass = mass0;
  double expected_mass_prev = mass0;
  const double mass_tol = 1e-10 * std::abs(mass0) + 1e-12 * mesh.domain_measure();
  const double energy_tol = 1e-9 * e0;

  const long nsteps = cfg.num_steps();
  const long snap_every = cfg.snapshot_interval;
  if (snap_every > 0)
    write_snapshot_csv(cfg.output_dir + "/u_0.csv", state.u, cfg.snapshot_points);

  for (long n = 1; n <= nsteps; ++n) {
    StepReport rep;
    const bool bdf2 = cfg.scheme == SchemeKind::ieq2 && n > 1;
    try {
      if (cfg.scheme == SchemeKind::ieq2 && n == 1)
        rep = stepper.step_ieq1(state, source ? &*source : nullptr);
      else if (bdf2)
        rep = stepper.step_ieq2(state, source ? &*source : nullptr);
      else
        rep = stepper.step_ieq1(state, source ? &*source : nullptr);
    } catch (const SolverError& err) {
      result.solver_failed = true;
      result.failure_message =
          "step " + std::to_string(n) + ": " + err.what();
      if (log) *log << "[run] aborted: " << result.failure_message << "\n";
      break;
    }

    // discrete mass recurrence (reduces to conservation without source)
    double source_mass = 0.0;
    if (source) {
      double t_next = state.time;  // already advanced
      AuxField s_nodes = sample_at_nodes(
          space, [&](const std::array<double, 2>& x) { return (*source)(x, t_next); });
      source_mass = nodal_integral(space, s_nodes.values);
    }
    double expected_next = bdf2 ? (4.0 * expected_mass - expected_mass_prev) / 3.0 +
                                      (2.0 * state.dt / 3.0) * source_mass
                                : expected_mass + state.dt * source_mass;
    expected_mass_prev = expected_mass;
    expected_mass = expected_next;

    const bool report_now = (n % cfg.diagnostics_interval == 0) || n == nsteps;
    DiagnosticsRecord rec = energies(state, stepper.a_eps(), params.potential);
    rec.identity_residual = rep.identity_residual;
    rec.dgnorm_w = dg_norm_sq(state.w, params.penalty);
    if (report_now) {
      result.records.push_back(rec);
      append_diagnostics_row(diag, rec);
    }

    result.min_energy = std::min(result.min_energy, rec.energy_quadratized);
    result.max_energy = std::max(result.max_energy, rec.energy_quadratized);
    if (e0 > 0.0)
      result.max_identity_residual =
          std::max(result.max_identity_residual, std::abs(rep.identity_residual) / e0);

    if (std::abs(rec.mass - expected_mass) > mass_tol) result.mass_monitor_fired = true;

    // monotonicity of the scheme's Lyapunov energy (no source only): E_quad
    // across the first-order steps, Ebar across the BDF2 steps (Ebar^1 is
    // the first comparable value, produced by the startup step)
    if (!source) {
      double increase = bdf2 ? rec.energy_modified - prev_ebar
                             : rec.energy_quadratized - prev_equad;
      if (increase > energy_tol) result.energy_monitor_fired = true;
      if (e0 > 0.0)
        result.max_energy_increase = std::max(result.max_energy_increase, increase / e0);
      prev_equad = rec.energy_quadratized;
      prev_ebar = rec.energy_modified;
    }

    if (snap_every > 0 && (n % snap_every == 0 || n == nsteps))
      write_snapshot_csv(cfg.output_dir + "/u_" + std::to_string(n) + ".csv", state.u,
                         cfg.snapshot_points);
  }

  result.mass_drift = result.records.empty()
                          ? 0.0
                          : std::abs(result.records.back().mass - mass0);
  if (log) {
    *log << "[run] steps=" << nsteps << " mass_drift=" << result.mass_drift
         << " energy_min=" << result.min_energy << " energy_max=" << result.max_energy
         << " monitors{energy=" << (result.energy_monitor_fired ? "FIRED" : "ok")
         << ",mass=" << (result.mass_monitor_fired ? "FIRED" : "ok")
         << ",solver=" << (result.solver_failed ? "FAILED" : "ok") << "}\n";
  }
  result.exit_code =
      (result.energy_monitor_fired || result.mass_monitor_fired || result.solver_failed) ? 1 : 0;
  return result;
}

ErrorNorms run_mms_single(const MMSRunSpec& spec) {
  const MMSCase& c = mms_case(spec.case_name);
  const Mesh mesh = Mesh::build(c.mesh_spec(spec.bc, spec.cells));
  const DGSpace space(mesh, spec.degree, spec.quad_points);

  SchemeParams params;
  params.epsilon = c.epsilon;
  params.potential = c.potential;
  params.mobility = c.mobility;
  params.penalty = PenaltyConfig::make(mesh, default_beta0(spec.degree, c.mobility.is_constant()));
  IEQStepper stepper(space, params);

  SourceFunction source = [&c](const std::array<double, 2>& x, double t) {
    return source_term(c, x, t);
  };
  PointFunction u0 = [&c](const std::array<double, 2>& x) { return exact_solution(c, x, 0.0); };

  const double t_final = spec.t_final.value_or(c.default_t_final);
  const SchemeKind scheme = spec.scheme.value_or(c.default_scheme);
  SchemeState state = stepper.init_state(u0, spec.dt);
  const long nsteps = std::max(1L, std::lround(t_final / spec.dt));
  for (long n = 1; n <= nsteps; ++n) {
    if (scheme == SchemeKind::ieq2 && n > 1)
      stepper.step_ieq2(state, &source);
    else
      stepper.step_ieq1(state, &source);
  }
  const double t_end = state.time;
  return error_norms(state.u,
                     [&](const std::array<double, 2>& x) { return exact_solution(c, x, t_end); });
}

std::vector<MMSStudyRow> MMSStudyResult::for_degree(int k) const {
  std::vector<MMSStudyRow> out;
  for (const auto& r : rows)
    if (r.degree == k) out.push_back(r);
  return out;
}

MMSStudyResult run_mms_study(const std::string& case_name, BoundaryKind bc,
                             const std::vector<int>& degrees, const std::vector<int>& meshes,
                             std::vector<double> dts, std::optional<SchemeKind> scheme,
                             std::optional<double> t_final, std::ostream* log) {
  if (degrees.empty() || meshes.empty()) throw ConfigError("mms study: empty degree or mesh list");
  const MMSCase& c = mms_case(case_name);
  if (dts.empty()) {
    for (int k : degrees)
      dts.push_back(c.default_dt[std::min(std::max(k, 1), 3) - 1]);
  } else if (dts.size() == 1) {
    dts.resize(degrees.size(), dts[0]);
  }
  if (dts.size() != degrees.size())
    throw ConfigError("mms study: --dt needs one value or one per degree");

  MMSStudyResult result;
  for (std::size_t di = 0; di < degrees.size(); ++di) {
    std::vector<double> l2s, linfs, hs;
    for (int n : meshes) {
      MMSRunSpec spec;
      spec.case_name = case_name;
      spec.bc = bc;
      spec.degree = degrees[di];
      spec.cells = n;
      spec.dt = dts[di];
      spec.t_final = t_final;
      spec.scheme = scheme;
      ErrorNorms err = run_mms_single(spec);
      result.rows.push_back({degrees[di], n, dts[di], err.l2, err.linf});
      l2s.push_back(err.l2);
      linfs.push_back(err.linf);
      hs.push_back(1.0 / n);
    }
    if (log) {
      auto ol2 = meshes.size() > 1 ? eoc(l2s, hs) : std::vector<double>{};
      auto olinf = meshes.size() > 1 ? eoc(linfs, hs) : std::vector<double>{};
      *log << "case " << case_name << (bc == BoundaryKind::periodic ? " periodic" : " neumann")
           << " k=" << degrees[di] << " dt=" << dts[di] << "\n";
      *log << "    N          L2_error   order        Linf_error   order\n";
      for (std::size_t i = 0; i < meshes.size(); ++i) {
        char buf[160];
        if (i == 0)
          std::snprintf(buf, sizeof buf, "%5d   %15.6e       -   %15.6e       -\n", meshes[i],
                        l2s[i], linfs[i]);
        else
          std::snprintf(buf, sizeof buf, "%5d   %15.6e   %5.2f   %15.6e   %5.2f\n", meshes[i],
                        l2s[i], ol2[i - 1], linfs[i], olinf[i - 1]);
        *log << buf;
      }
    }
  }
  return result;
}

}  // namespace chdg
