#pragma once

// Config ingestion, bundled experiments and run manifests behind the `rgsw`
// tool.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgsw/solver.hpp"
#include "rgsw/spectral.hpp"

namespace rgsw::cli {

using json = nlohmann::ordered_json;

/// A parsed JSON document that remembers its text, so that errors can name
/// the offending line.
class ConfigDocument {
 public:
  static ConfigDocument parse(std::string text, std::string origin);
  static ConfigDocument load(const std::string& path);

  const json& root() const noexcept { return root_; }
  const std::string& origin() const noexcept { return origin_; }

  /// 1-based line of the last key on a JSON pointer path, 0 if not found.
  int line_of(const std::string& pointer) const;

 private:
  std::string text_;
  std::string origin_;
  json root_;
};

/// Typed view of one node. Every accessor throws Error(Errc::Config) with
/// the origin, line and field path on missing or malformed values.
class Field {
 public:
  Field(const ConfigDocument& doc, const json& node, std::string pointer);

  Field at(const std::string& key) const;
  std::optional<Field> find(const std::string& key) const;
  Field operator[](std::size_t i) const;
  bool has(const std::string& key) const;
  std::size_t size() const;

  double number() const;
  double positive() const;
  std::size_t count() const;
  std::string string() const;
  bool boolean() const;
  std::vector<double> numbers() const;

  double number_or(const std::string& key, double fallback) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;

  const json& node() const noexcept { return *node_; }
  const std::string& pointer() const noexcept { return pointer_; }

  [[noreturn]] void fail(const std::string& message) const;

 private:
  const ConfigDocument* doc_;
  const json* node_;
  std::string pointer_;
};

Field root_field(const ConfigDocument& doc);

PhysParams parse_params(const Field& f);
Grid1D parse_grid(const Field& f);
InitialCondition parse_initial(const Field& f, const PhysParams& p);
SolverOptions parse_solver(const Field& f);

/// Top-level `params`, `grid`, `initial`, `time` and optional `solver`.
SimConfig parse_sim_config(const ConfigDocument& doc);

json to_json(const PhysParams& p);
json to_json(const Grid1D& g);
json to_json(const InitialCondition& init);
json to_json(const SimConfig& config);

/// `profile` block: single_jump, delta, periodic or constant, with an
/// optional `mollify` half-width.
WaveProfile parse_profile(const Field& f, const PhysParams& p);

ContourSpec parse_contour(const Field& f);
EvansOptions parse_evans(const Field& f);

// ---------------------------------------------------------------- presets

struct CheckResult {
  std::string name;
  bool passed;
  double value;
  double expected;
  double tolerance;
  std::string detail;
};

json to_json(const CheckResult& c);

struct ExperimentPreset {
  std::string name;
  std::string description;
  SimConfig config;
  std::function<std::vector<CheckResult>(const SimConfig&, const std::vector<Snapshot>&)> checks;
};

std::vector<std::string> preset_names();

/// Throws Error(Errc::InvalidParameter) for unknown names.
ExperimentPreset make_preset(const std::string& name);

/// Admissibility of the initial data and equilibrium of the outermost cells,
/// ghat h = C_f U^2 to 1e-10 relative.
std::vector<CheckResult> seed_checks(const SimConfig& config);

/// Fraction of sum |Phi| lying within `radius` of a face where
/// |h_{i+1} - h_i| / dx exceeds `threshold`; the number of such faces goes
/// to `fronts` when given.
double phi_localization(const Snapshot& s, const Grid1D& g, const PhysParams& p, double threshold,
                        double radius, std::size_t* fronts = nullptr);

// ---------------------------------------------------------------- manifest

struct RunManifest {
  std::string command;
  json config;
  std::string version;
  double wall_seconds = 0.0;
  std::vector<std::string> files;
  std::vector<CheckResult> checks;
};

json to_json(const RunManifest& m);

/// Writes `<dir>/manifest.json` through a temporary file and a rename.
std::string write_manifest(const std::string& dir, const RunManifest& m);

const char* version() noexcept;

}  // namespace rgsw::cli
