#ifndef CHDG_CONFIG_HPP
#define CHDG_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chdg/mms.hpp"

namespace chdg {

struct RegionIC {
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};
  double value = 0.0;
};

struct InitialCondition {
  enum class Kind { mms, constant_regions, random_perturbation };
  Kind kind = Kind::mms;
  std::string mms_case = "dw-1d";
  double background = 0.0;            // constant_regions: value outside all boxes
  std::vector<RegionIC> regions;      // first matching box wins
  double base = 0.0;                  // random_perturbation
  double amplitude = 0.0;
};

// Parsed, validated run description. For mms initial conditions the domain,
// physics, and mobility are owned by the case and must not be restated in
// the file; beta0 = auto resolves to k^2 + 0.5k (constant mobility) or
// 3k^2 + 0.5k (otherwise).
struct RunConfig {
  MeshSpec mesh;
  int degree = 1;
  int quad_points = 0;  // 0 -> degree + 2
  double dt = 0.0;
  double t_final = 0.0;
  SchemeKind scheme = SchemeKind::ieq1;
  double epsilon = 1.0;
  PotentialSpec potential;
  MobilitySpec mobility;
  double beta0 = 0.0;  // 0 -> auto rule
  InitialCondition ic;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  long snapshot_interval = 0;      // steps between snapshots; 0 = none
  long diagnostics_interval = 1;   // steps between diagnostics rows
  int snapshot_points = 1;         // sample points per axis per cell

  double resolved_beta0() const;
  long num_steps() const;
};

// Flat `key = value` text format with dotted sections and '#' comments.
// Unknown keys are rejected by name.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<memory>");

}  // namespace chdg

#endif
