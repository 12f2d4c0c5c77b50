// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

// thinspec <task> --config <path> [--out <dir>] [--jobs N]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "thinspec/config.hpp"
#include "thinspec/error.hpp"
#include "thinspec/run.hpp"

int main(int argc, char **argv)
{
  using namespace thinspec;

  CLI::App app{"Thin-layer transmission eigenvalue toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string task_name, config_path, out_dir;
  int jobs = 1;
  app.add_option("task", task_name, "coeffs | direct | sweep | disk-oracle | validate")->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory, overrides the config");
  app.add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::Range(1, 256));

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int status = app.exit(e);
    return status == 0 ? kExitOk : kExitConfigError;
  }

  RunConfig cfg;
  try
  {
    cfg = load_config(config_path, parse_task(task_name));
  }
  catch (const Error &e)
  {
    std::cerr << "config error: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? kExitConfigError : kExitSolverError;
  }

  RunOptions opts;
  opts.output_dir = out_dir;
  opts.jobs = jobs;
  return run(cfg, opts, std::cerr);
}
