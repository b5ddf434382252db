#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgc/measures.hpp"

namespace rgc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  std::string name;  // accel, accel_I, accel_II, D, L, Omega0, mass, r, n
  double min = 0.0, max = 0.0;
  int points = 1;
  bool log_scale = false;
  std::vector<double> values() const;
};

enum class InputKind { vacuum, squeezed_thermal, coherent };
enum class OutputKind { passive, active };

struct SlotParams {
  double L = 2.0;
  std::optional<double> Omega0;  // default √(25 + m²)
};

struct ScenarioConfig {
  std::string scenario = "custom";
  std::string description;
  Geometry geometry;
  double mass = 0.1;
  SlotParams slot_I, slot_II;
  std::optional<double> fixed_separation;  // D = sep − 1/𝒜_I − 1/𝒜_II
  InputKind input = InputKind::vacuum;
  double r = 0.0, n = 0.0;
  Eigen::Vector4d displacement = Eigen::Vector4d::Zero();
  OutputKind output = OutputKind::passive;
  std::vector<SweepAxis> sweep;
  double tail_tol = 1e-9;
  double d_eps = 1e-6;
  double a_conv = 1.0;
  double log_base = 2.718281828459045;
  double capacity_base = 2.0;
  double mbar = 1.0;
  std::string output_path;
  std::string cache_dir;
};

// Parses the INFO-format config text. Errors carry the offending field path.
ScenarioConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ScenarioConfig load_config(const std::string& path);
void validate(const ScenarioConfig& c);

const std::vector<std::string>& preset_names();
ScenarioConfig preset(const std::string& name);
// One line per preset: name, title, parameter summary.
std::string list_scenarios(const ScenarioConfig* custom = nullptr);

// One sweep point after axis substitution.
struct PointSpec {
  double accel_I, accel_II, D, L_I, L_II, Omega0_I, Omega0_II, mass, r, n;
};
std::vector<PointSpec> expand(const ScenarioConfig& c);

// Channel-level physics for one point (cacheable).
struct ChannelPhysics {
  OverlapCoeffs overlaps;
  double n_I = 0.0, n_II = 0.0, n_I_err = 0.0, n_II_err = 0.0;
  CrossTerms cross;
};

struct PointResult {
  PointSpec spec{};
  ChannelPhysics phys;
  double neg = 0.0, neg_eig = 1.0;
  double fidelity = 1.0, fidelity_approx = 1.0;
  SingleModeCanonical single;
  double c_lb = 0.0, q_lb = 0.0;
  double cp_margin = 0.0;
  bool bound_ok = true;
  bool converged = true;
  bool cache_hit = false;
  std::string status = "ok";
};

struct RunOptions {
  int workers = 1;
  bool use_cache = true;
  std::string out_dir;
};

struct RunSummary {
  std::vector<PointResult> rows;
  std::string csv_path;
  int failed = 0;
};

RunSummary run_scenario(const ScenarioConfig& cfg, const RunOptions& opt);
std::string csv_header();
std::string csv_row(const PointResult& r);

// On-disk cache of channel physics. Keys are the full canonical parameter
// text; the file name is its 64-bit FNV-1a hash.
struct CacheKey {
  std::string text;
  std::uint64_t hash() const;
};
CacheKey channel_key(const ScenarioConfig& c, const PointSpec& p);
std::optional<std::string> cache_get(const std::string& dir, const CacheKey& key);
bool cache_put(const std::string& dir, const CacheKey& key, const std::string& payload);
int cache_clear(const std::string& dir);
std::string default_cache_dir();

std::string serialize(const ChannelPhysics& p);
std::optional<ChannelPhysics> deserialize_physics(const std::string& s);

inline constexpr const char* code_version = "rgc-1";

}  // namespace rgc
