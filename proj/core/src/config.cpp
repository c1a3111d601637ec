#include "chdg/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "chdg/errors.hpp"
#include "chdg/forms.hpp"

namespace chdg {

double RunConfig::resolved_beta0() const {
  if (beta0 > 0.0) return beta0;
  return default_beta0(degree, mobility.is_constant());
}

long RunConfig::num_steps() const {
  long n = std::lround(t_final / dt);
  return n < 1 ? 1 : n;
}

namespace {

struct KeyValueFile {
  std::map<std::string, std::string> entries;
  std::string origin;

  bool has(const std::string& key) const { return entries.count(key) > 0; }

  std::string take(const std::string& key, const std::string& fallback, bool* seen = nullptr) {
    auto it = entries.find(key);
    if (it == entries.end()) {
      if (seen) *seen = false;
      return fallback;
    }
    if (seen) *seen = true;
    std::string v = it->second;
    entries.erase(it);
    return v;
  }

  double take_number(const std::string& key, double fallback) {
    bool seen = false;
    std::string v = take(key, "", &seen);
    if (!seen) return fallback;
    return parse_number(key, v);
  }

  double parse_number(const std::string& key, const std::string& v) const {
    std::size_t pos = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &pos);
    } catch (const std::exception&) {
      throw ConfigError(origin + ": key '" + key + "' expects a number, got '" + v + "'");
    }
    if (pos != v.size())
      throw ConfigError(origin + ": key '" + key + "' has trailing junk in '" + v + "'");
    return x;
  }

  long take_integer(const std::string& key, long fallback) {
    double x = take_number(key, static_cast<double>(fallback));
    long i = std::lround(x);
    if (x != static_cast<double>(i))
      throw ConfigError(origin + ": key '" + key + "' expects an integer");
    return i;
  }
};

KeyValueFile tokenize(const std::string& text, const std::string& origin) {
  KeyValueFile kv;
  kv.origin = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
    if (kv.entries.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv.entries[key] = value;
  }
  return kv;
}

std::vector<double> parse_number_list(const KeyValueFile& kv, const std::string& key,
                                      const std::string& value) {
  std::istringstream in(value);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(kv.parse_number(key, tok));
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  KeyValueFile kv = tokenize(text, origin);
  RunConfig cfg;

  const std::string ic_kind = kv.take("ic.kind", "mms");
  const bool is_mms = ic_kind == "mms";

  if (is_mms) {
    cfg.ic.kind = InitialCondition::Kind::mms;
    cfg.ic.mms_case = kv.take("ic.case", "dw-1d");
    const MMSCase& c = mms_case(cfg.ic.mms_case);

    std::string bc = kv.take("mesh.bc", "periodic");
    if (bc != "periodic" && bc != "neumann")
      throw ConfigError(origin + ": mesh.bc must be 'periodic' or 'neumann', got '" + bc + "'");
    int nx = static_cast<int>(kv.take_integer("mesh.nx", 0));
    if (nx < 1) throw ConfigError(origin + ": mesh.nx must be a positive cell count");
    cfg.mesh = c.mesh_spec(bc == "periodic" ? BoundaryKind::periodic : BoundaryKind::neumann, nx);
    if (kv.has("mesh.ny")) {
      int ny = static_cast<int>(kv.take_integer("mesh.ny", 0));
      if (cfg.mesh.dim != 2)
        throw ConfigError(origin + ": mesh.ny given but case " + c.name + " is 1D");
      cfg.mesh.cells[1] = ny;
    }
    // the case owns domain and physics; reject attempts to restate them
    for (const char* key :
         {"mesh.dim", "mesh.xmin", "mesh.xmax", "mesh.ymin", "mesh.ymax", "physics.epsilon",
          "physics.b", "potential.kind", "potential.theta", "potential.theta_c", "potential.sigma",
          "mobility.kind", "mobility.value", "mobility.sigma"})
      if (kv.has(key))
        throw ConfigError(origin + ": key '" + std::string(key) +
                          "' conflicts with mms case defaults; remove it");
    cfg.epsilon = c.epsilon;
    cfg.potential = c.potential;
    cfg.mobility = c.mobility;
    cfg.scheme = c.default_scheme;
    cfg.t_final = c.default_t_final;
  } else {
    cfg.mesh.dim = static_cast<int>(kv.take_integer("mesh.dim", 1));
    cfg.mesh.lo[0] = kv.take_number("mesh.xmin", 0.0);
    cfg.mesh.hi[0] = kv.take_number("mesh.xmax", 1.0);
    cfg.mesh.cells[0] = static_cast<int>(kv.take_integer("mesh.nx", 0));
    if (cfg.mesh.dim == 2) {
      cfg.mesh.lo[1] = kv.take_number("mesh.ymin", 0.0);
      cfg.mesh.hi[1] = kv.take_number("mesh.ymax", 1.0);
      cfg.mesh.cells[1] = static_cast<int>(kv.take_integer("mesh.ny", cfg.mesh.cells[0]));
    }
    std::string bc = kv.take("mesh.bc", "periodic");
    if (bc != "periodic" && bc != "neumann")
      throw ConfigError(origin + ": mesh.bc must be 'periodic' or 'neumann', got '" + bc + "'");
    cfg.mesh.bc = bc == "periodic" ? BoundaryKind::periodic : BoundaryKind::neumann;

    cfg.epsilon = kv.take_number("physics.epsilon", 1.0);
    cfg.potential.shift_b = kv.take_number("physics.b", 1.0);

    std::string pot = kv.take("potential.kind", "double_well");
    if (pot == "double_well")
      cfg.potential.kind = PotentialKind::double_well;
    else if (pot == "flory_huggins")
      cfg.potential.kind = PotentialKind::flory_huggins;
    else if (pot == "regularized_flory_huggins")
      cfg.potential.kind = PotentialKind::regularized_flory_huggins;
    else
      throw ConfigError(origin + ": unknown potential.kind '" + pot + "'");
    cfg.potential.theta = kv.take_number("potential.theta", 2.0);
    cfg.potential.theta_c = kv.take_number("potential.theta_c", 2.0);
    cfg.potential.sigma = kv.take_number("potential.sigma", 1e-4);

    std::string mob = kv.take("mobility.kind", "constant");
    if (mob == "constant")
      cfg.mobility.kind = MobilityKind::constant;
    else if (mob == "degenerate")
      cfg.mobility.kind = MobilityKind::degenerate;
    else if (mob == "clamped_degenerate")
      cfg.mobility.kind = MobilityKind::clamped_degenerate;
    else
      throw ConfigError(origin + ": unknown mobility.kind '" + mob + "'");
    cfg.mobility.value = kv.take_number("mobility.value", 1.0);
    cfg.mobility.sigma = kv.take_number("mobility.sigma", 1e-4);

    if (ic_kind == "constant_regions") {
      cfg.ic.kind = InitialCondition::Kind::constant_regions;
      cfg.ic.background = kv.take_number("ic.background", 0.0);
      for (int r = 1;; ++r) {
        std::string box_key = "ic.region" + std::to_string(r) + ".box";
        std::string val_key = "ic.region" + std::to_string(r) + ".value";
        if (!kv.has(box_key)) break;
        auto nums = parse_number_list(kv, box_key, kv.take(box_key, ""));
        if (static_cast<int>(nums.size()) != 2 * cfg.mesh.dim)
          throw ConfigError(origin + ": key '" + box_key + "' expects " +
                            std::to_string(2 * cfg.mesh.dim) + " numbers (xmin xmax [ymin ymax])");
        RegionIC region;
        region.lo[0] = nums[0];
        region.hi[0] = nums[1];
        if (cfg.mesh.dim == 2) {
          region.lo[1] = nums[2];
          region.hi[1] = nums[3];
        }
        bool seen = false;
        std::string vs = kv.take(val_key, "", &seen);
        if (!seen) throw ConfigError(origin + ": missing '" + val_key + "'");
        region.value = kv.parse_number(val_key, vs);
        for (int a = 0; a < cfg.mesh.dim; ++a)
          if (region.lo[a] < cfg.mesh.lo[a] - 1e-12 || region.hi[a] > cfg.mesh.hi[a] + 1e-12 ||
              !(region.hi[a] > region.lo[a]))
            throw ConfigError(origin + ": '" + box_key + "' box must lie inside the domain");
        cfg.ic.regions.push_back(region);
      }
      if (cfg.ic.regions.empty())
        throw ConfigError(origin + ": constant_regions needs at least ic.region1.box/value");
    } else if (ic_kind == "random_perturbation") {
      cfg.ic.kind = InitialCondition::Kind::random_perturbation;
      cfg.ic.base = kv.take_number("ic.base", 0.0);
      cfg.ic.amplitude = kv.take_number("ic.amplitude", 0.0);
      if (cfg.ic.amplitude < 0.0) throw ConfigError(origin + ": ic.amplitude must be >= 0");
    } else {
      throw ConfigError(origin + ": unknown ic.kind '" + ic_kind +
                        "' (mms, constant_regions, random_perturbation)");
    }
  }

  cfg.degree = static_cast<int>(kv.take_integer("space.degree", 1));
  if (cfg.degree < 0) throw ConfigError(origin + ": space.degree must be >= 0");
  cfg.quad_points = static_cast<int>(kv.take_integer("space.quad", 0));

  cfg.dt = kv.take_number("time.dt", 0.0);
  if (!(cfg.dt > 0.0)) throw ConfigError(origin + ": time.dt must be positive");
  cfg.t_final = kv.take_number("time.final", cfg.t_final);
  if (!(cfg.t_final >= cfg.dt))
    throw ConfigError(origin + ": time.final must be at least one step (>= time.dt)");

  bool seen_scheme = false;
  std::string scheme = kv.take("scheme", "", &seen_scheme);
  if (seen_scheme) {
    if (scheme == "ieq1")
      cfg.scheme = SchemeKind::ieq1;
    else if (scheme == "ieq2")
      cfg.scheme = SchemeKind::ieq2;
    else
      throw ConfigError(origin + ": scheme must be 'ieq1' or 'ieq2', got '" + scheme + "'");
  } else if (!is_mms) {
    throw ConfigError(origin + ": missing key 'scheme' (ieq1 or ieq2)");
  }

  std::string beta0 = kv.take("penalty.beta0", "auto");
  if (beta0 != "auto") {
    cfg.beta0 = kv.parse_number("penalty.beta0", beta0);
    if (!(cfg.beta0 > 0.0)) throw ConfigError(origin + ": penalty.beta0 must be positive or auto");
  }

  double seed = kv.take_number("seed", 0.0);
  if (seed < 0.0) throw ConfigError(origin + ": seed must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);

  cfg.output_dir = kv.take("output.dir", ".");
  cfg.snapshot_interval = kv.take_integer("output.snapshot_interval", 0);
  cfg.diagnostics_interval = kv.take_integer("output.diagnostics_interval", 1);
  cfg.snapshot_points = static_cast<int>(kv.take_integer("output.snapshot_points", 1));
  if (cfg.diagnostics_interval < 1)
    throw ConfigError(origin + ": output.diagnostics_interval must be >= 1");
  if (cfg.snapshot_interval < 0 || cfg.snapshot_points < 1)
    throw ConfigError(origin + ": invalid snapshot settings");

  if (!kv.entries.empty())
    throw ConfigError(origin + ": unknown key '" + kv.entries.begin()->first + "'");

  if (!(cfg.epsilon > 0.0)) throw ConfigError(origin + ": physics.epsilon must be positive");
  if (!(cfg.potential.shift_b > 0.0)) throw ConfigError(origin + ": physics.b must be positive");
  if (cfg.potential.kind == PotentialKind::regularized_flory_huggins &&
      !(cfg.potential.sigma > 0.0 && cfg.potential.sigma < 0.5))
    throw ConfigError(origin + ": potential.sigma must lie in (0, 1/2)");
  if (cfg.mobility.kind == MobilityKind::clamped_degenerate &&
      !(cfg.mobility.sigma > 0.0 && cfg.mobility.sigma < 0.5))
    throw ConfigError(origin + ": mobility.sigma must lie in (0, 1/2)");
  if (cfg.mobility.kind == MobilityKind::constant && !(cfg.mobility.value > 0.0))
    throw ConfigError(origin + ": mobility.value must be positive");

  return cfg;
}

}  // namespace chdg
