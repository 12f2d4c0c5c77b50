// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "thinspec/error.hpp"

namespace thinspec
{

namespace
{

using json = nlohmann::json;

[[noreturn]] void fail(const std::string &field, const std::string &what)
{
  throw Error(ErrorCode::ConfigError, "field '" + field + "': " + what);
}

void allow_keys(const json &obj, const std::string &where, std::initializer_list<const char *> keys)
{
  if (!obj.is_object())
    fail(where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto &item : obj.items())
  {
    if (!allowed.count(item.key()))
      fail(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
  }
}

double number(const json &obj, const std::string &key, const std::string &where)
{
  if (!obj.contains(key))
    fail(where + "." + key, "missing");
  const json &v = obj.at(key);
  if (!v.is_number())
    fail(where + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x))
    fail(where + "." + key, "must be finite");
  return x;
}

std::vector<double> numbers(const json &v, const std::string &field, bool allow_empty)
{
  if (!v.is_array())
    fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    if (!v[i].is_number())
      fail(field + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  if (!allow_empty && out.empty())
    fail(field, "must not be empty");
  return out;
}

std::string text(const json &obj, const std::string &key, const std::string &where)
{
  if (!obj.at(key).is_string())
    fail(where.empty() ? key : where + "." + key, "expected a string");
  return obj.at(key).get<std::string>();
}

GeometrySpec parse_geometry(const json &j)
{
  GeometrySpec g;
  if (!j.is_object() || !j.contains("kind"))
    fail("geometry.kind", "missing");
  g.kind = text(j, "kind", "geometry");
  if (g.kind == "circle")
  {
    allow_keys(j, "geometry", {"kind", "radius"});
    g.radius = number(j, "radius", "geometry");
    if (!(g.radius > 0.0))
      fail("geometry.radius", "must be positive");
  }
  else if (g.kind == "ellipse")
  {
    allow_keys(j, "geometry", {"kind", "a", "b"});
    g.a = number(j, "a", "geometry");
    g.b = number(j, "b", "geometry");
    if (!(g.a > 0.0) || !(g.b > 0.0))
      fail("geometry", "semi-axes must be positive");
  }
  else if (g.kind == "fourier")
  {
    allow_keys(j, "geometry", {"kind", "modes"});
    if (!j.contains("modes"))
      fail("geometry.modes", "missing");
    g.modes = numbers(j.at("modes"), "geometry.modes", false);
  }
  else
  {
    fail("geometry.kind", "unknown curve kind '" + g.kind + "'");
  }
  return g;
}

ThicknessProfile parse_profile(const json &j)
{
  if (j.is_number())
    return ThicknessProfile::constant(j.get<double>());
  if (!j.is_object() || !j.contains("kind"))
    fail("layer.g", "expected a number or an object with a kind");
  const std::string kind = text(j, "kind", "layer.g");
  if (kind == "constant")
  {
    allow_keys(j, "layer.g", {"kind", "value"});
    return ThicknessProfile::constant(number(j, "value", "layer.g"));
  }
  if (kind == "fourier")
  {
    allow_keys(j, "layer.g", {"kind", "c0", "cos", "sin"});
    std::vector<double> c, s;
    if (j.contains("cos"))
      c = numbers(j.at("cos"), "layer.g.cos", true);
    if (j.contains("sin"))
      s = numbers(j.at("sin"), "layer.g.sin", true);
    return ThicknessProfile::fourier(number(j, "c0", "layer.g"), c, s);
  }
  fail("layer.g.kind", "unknown profile kind '" + kind + "'");
}

RefractiveIndex parse_index(const json &j)
{
  if (j.is_number())
    return RefractiveIndex::constant(j.get<double>());
  allow_keys(j, "layer.n", {"outer", "inner"});
  return RefractiveIndex::across_layer(number(j, "outer", "layer.n"), number(j, "inner", "layer.n"));
}

std::size_t line_of(const std::string &text, std::size_t byte)
{
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
    line += text[i] == '\n';
  return line;
}

} // namespace

std::string to_string(Task task)
{
  switch (task)
  {
  case Task::Coeffs:
    return "coeffs";
  case Task::Direct:
    return "direct";
  case Task::Sweep:
    return "sweep";
  case Task::DiskOracle:
    return "disk-oracle";
  case Task::Validate:
    return "validate";
  }
  return "unknown";
}

Task parse_task(const std::string &name)
{
  for (Task t : {Task::Coeffs, Task::Direct, Task::Sweep, Task::DiskOracle, Task::Validate})
  {
    if (to_string(t) == name)
      return t;
  }
  throw Error(ErrorCode::ConfigError, "unknown task '" + name + "'");
}

BoundaryCurve GeometrySpec::build() const
{
  if (kind == "circle")
    return BoundaryCurve::circle(radius);
  if (kind == "ellipse")
    return BoundaryCurve::ellipse(a, b);
  return BoundaryCurve::fourier(modes);
}

std::string RunConfig::describe() const
{
  std::ostringstream os;
  os << geometry.build().describe() << ";g=" << g.describe() << ";n=" << n.describe();
  return os.str();
}

bool RunConfig::uses_disk_path() const
{
  if (method == Method::Fem)
    return false;
  const bool eligible = geometry.kind == "circle" && g.is_constant() && n.is_constant();
  if (method == Method::Disk && !eligible)
    throw Error(ErrorCode::ConfigError, "field 'method': the disk path needs a circle with constant g and n");
  return eligible;
}

RunConfig parse_config(const std::string &source, std::optional<Task> task)
{
  json root;
  try
  {
    root = json::parse(source);
  }
  catch (const json::parse_error &e)
  {
    std::ostringstream os;
    os << "malformed JSON at line " << line_of(source, e.byte) << ": " << e.what();
    throw Error(ErrorCode::ConfigError, os.str());
  }
  allow_keys(root, "", {"schema", "task", "method", "geometry", "layer", "mesh", "output", "tolerances"});

  RunConfig cfg;
  if (!root.contains("schema"))
    fail("schema", "missing");
  cfg.schema = text(root, "schema", "");
  if (cfg.schema != kConfigSchema)
    fail("schema", "expected '" + std::string(kConfigSchema) + "', got '" + cfg.schema + "'");
  if (root.contains("task"))
  {
    try
    {
      cfg.task = parse_task(text(root, "task", ""));
      cfg.task_specified = true;
    }
    catch (const Error &)
    {
      fail("task", "unknown task '" + root.at("task").get<std::string>() + "'");
    }
  }
  if (task)
  {
    if (cfg.task_specified && cfg.task != *task)
      fail("task", "file declares '" + to_string(cfg.task) + "' but '" + to_string(*task) + "' was requested");
    cfg.task = *task;
  }
  else if (!cfg.task_specified)
  {
    fail("task", "missing");
  }
  if (root.contains("method"))
  {
    const std::string m = text(root, "method", "");
    if (m == "auto")
      cfg.method = Method::Auto;
    else if (m == "disk")
      cfg.method = Method::Disk;
    else if (m == "fem")
      cfg.method = Method::Fem;
    else
      fail("method", "expected auto, disk or fem");
  }
  if (!root.contains("geometry"))
    fail("geometry", "missing");
  cfg.geometry = parse_geometry(root.at("geometry"));

  if (root.contains("layer"))
  {
    const json &layer = root.at("layer");
    allow_keys(layer, "layer", {"delta0", "g", "n"});
    if (layer.contains("delta0"))
      cfg.delta0 = numbers(layer.at("delta0"), "layer.delta0", true);
    try
    {
      if (layer.contains("g"))
        cfg.g = parse_profile(layer.at("g"));
      if (layer.contains("n"))
        cfg.n = parse_index(layer.at("n"));
    }
    catch (const Error &e)
    {
      if (e.code() == ErrorCode::ConfigError)
        throw;
      fail("layer", e.what());
    }
  }
  if (root.contains("mesh"))
  {
    allow_keys(root.at("mesh"), "mesh", {"h"});
    if (root.at("mesh").contains("h"))
      cfg.h = numbers(root.at("mesh").at("h"), "mesh.h", true);
  }
  if (root.contains("output"))
    cfg.output_dir = text(root, "output", "");
  if (root.contains("tolerances"))
  {
    const json &t = root.at("tolerances");
    allow_keys(t, "tolerances",
               {"min_slope", "sandwich_factor", "guard_ratio", "disk_step", "disk_max_mode", "scan_steps",
                "radial_nodes"});
    if (t.contains("min_slope"))
    {
      const json &v = t.at("min_slope");
      if (!v.is_array())
        fail("tolerances.min_slope", "expected an array of numbers or nulls");
      for (std::size_t i = 0; i < v.size(); ++i)
      {
        if (v[i].is_null())
          cfg.tolerances.min_slope.push_back(std::numeric_limits<double>::quiet_NaN());
        else if (v[i].is_number())
          cfg.tolerances.min_slope.push_back(v[i].get<double>());
        else
          fail("tolerances.min_slope[" + std::to_string(i) + "]", "expected a number or null");
      }
    }
    if (t.contains("sandwich_factor"))
      cfg.tolerances.sandwich_factor = number(t, "sandwich_factor", "tolerances");
    if (t.contains("guard_ratio"))
      cfg.tolerances.guard_ratio = number(t, "guard_ratio", "tolerances");
    if (t.contains("disk_step"))
      cfg.tolerances.disk_step = number(t, "disk_step", "tolerances");
    if (t.contains("disk_max_mode"))
      cfg.tolerances.disk_max_mode = static_cast<int>(number(t, "disk_max_mode", "tolerances"));
    if (t.contains("scan_steps"))
      cfg.tolerances.scan_steps = static_cast<int>(number(t, "scan_steps", "tolerances"));
    if (t.contains("radial_nodes"))
      cfg.tolerances.radial_nodes = static_cast<int>(number(t, "radial_nodes", "tolerances"));
    if (cfg.tolerances.min_slope.size() > 3)
      fail("tolerances.min_slope", "at most three orders");
    if (cfg.tolerances.scan_steps < 64)
      fail("tolerances.scan_steps", "must be at least 64");
    if (!(cfg.tolerances.disk_step > 0.0))
      fail("tolerances.disk_step", "must be positive");
    if (cfg.tolerances.radial_nodes < 16 || cfg.tolerances.radial_nodes % 2 != 0)
      fail("tolerances.radial_nodes", "must be an even number >= 16");
  }

  // checks that depend on the task
  const BoundaryCurve curve = cfg.geometry.build();
  for (std::size_t i = 0; i < cfg.delta0.size(); ++i)
  {
    const std::string field = "layer.delta0[" + std::to_string(i) + "]";
    if (!(cfg.delta0[i] > 0.0))
      fail(field, "must be positive");
    try
    {
      LayerConfig(cfg.delta0[i], cfg.g, cfg.n).validate_against(curve);
    }
    catch (const Error &e)
    {
      fail(field, e.what());
    }
  }
  for (std::size_t i = 0; i < cfg.h.size(); ++i)
  {
    if (!(cfg.h[i] > 0.0))
      fail("mesh.h[" + std::to_string(i) + "]", "must be positive");
  }
  const bool needs_delta = cfg.task == Task::Direct || cfg.task == Task::Sweep;
  if (needs_delta && cfg.delta0.empty())
    fail("layer.delta0", "must not be empty for task " + to_string(cfg.task));
  if (cfg.task == Task::Sweep)
  {
    for (std::size_t i = 1; i < cfg.delta0.size(); ++i)
    {
      if (!(cfg.delta0[i] < cfg.delta0[i - 1]))
        fail("layer.delta0", "must be strictly decreasing for a sweep");
    }
  }
  if (cfg.task == Task::DiskOracle && cfg.geometry.kind != "circle")
    fail("geometry.kind", "disk-oracle needs a circle");
  const bool disk_sweep = cfg.task == Task::Sweep && cfg.uses_disk_path();
  const bool needs_mesh = (cfg.task != Task::DiskOracle) && !disk_sweep;
  if (needs_mesh && cfg.h.empty())
    fail("mesh.h", "must not be empty for task " + to_string(cfg.task));
  return cfg;
}

RunConfig load_config(const std::string &path, std::optional<Task> task)
{
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), task);
}

} // namespace thinspec
