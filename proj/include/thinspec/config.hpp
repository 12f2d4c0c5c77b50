// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_CONFIG_HPP
#define THINSPEC_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "thinspec/geometry.hpp"

namespace thinspec
{

inline constexpr const char *kConfigSchema = "thinspec-run/1";

enum class Task
{
  Coeffs,
  Direct,
  Sweep,
  DiskOracle,
  Validate
};

std::string to_string(Task task);
/// Throws ConfigError for an unknown task name.
Task parse_task(const std::string &name);

// auto picks the semi-analytic disk path for circles with constant g and n
enum class Method
{
  Auto,
  Disk,
  Fem
};

struct GeometrySpec
{
  std::string kind = "circle";
  double radius = 1.0;
  double a = 1.0, b = 1.0;
  std::vector<double> modes;

  BoundaryCurve build() const;
};

struct Tolerances
{
  // exit 2 when a fitted slope at order k falls below min_slope[k]; NaN disables
  std::vector<double> min_slope;
  double sandwich_factor = 3.0;
  double guard_ratio = 1.0 / 3.0;
  double disk_step = 0.01;
  int disk_max_mode = 6;
  int scan_steps = 64;
  int radial_nodes = 2000;
};

struct RunConfig
{
  std::string schema = kConfigSchema;
  Task task = Task::Coeffs;
  // false when the file leaves the task to the command line
  bool task_specified = false;
  Method method = Method::Auto;
  GeometrySpec geometry;
  std::vector<double> delta0;
  ThicknessProfile g = ThicknessProfile::constant(1.0);
  RefractiveIndex n = RefractiveIndex::constant(0.5);
  std::vector<double> h;
  std::string output_dir = "out";
  Tolerances tolerances;

  /// Canonical one-line description used in provenance headers.
  std::string describe() const;
  /// True when the semi-analytic disk path serves this configuration.
  bool uses_disk_path() const;
};

/// Parses and validates a JSON run configuration. Unknown keys, wrong types
/// and invalid values throw ConfigError naming the offending field, or the
/// line for malformed JSON. A `task` argument fills in or must agree with the
/// file's own task key.
RunConfig parse_config(const std::string &text, std::optional<Task> task = std::nullopt);
RunConfig load_config(const std::string &path, std::optional<Task> task = std::nullopt);

} // namespace thinspec

#endif // THINSPEC_CONFIG_HPP
