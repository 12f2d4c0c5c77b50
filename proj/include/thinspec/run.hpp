// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_RUN_HPP
#define THINSPEC_RUN_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thinspec/config.hpp"
#include "thinspec/convergence.hpp"

namespace thinspec
{

inline constexpr const char *kVersion = "0.3.0";

inline constexpr const char *kSweepHeader =
    "delta,lambda_direct,lambda_dirichlet_eroded,pred0,pred1,pred2,err0,err1,err2,sandwich_ok,mesh_guard_ok";

enum ExitCode : int
{
  kExitOk = 0,
  kExitSolverError = 1,
  kExitValidationFailure = 2,
  kExitConfigError = 3
};

struct SweepRow
{
  double delta = 0.0;
  double lambda_direct = 0.0;
  double lambda_eroded = 0.0;
  double lambda0 = 0.0;
  std::array<double, 3> pred{};
  std::array<double, 3> err{};
  // Richardson estimates; zero on the semi-analytic path
  double mesh_error_direct = 0.0;
  std::array<double, 3> mesh_error{};
  std::array<bool, 3> guard{};
  double sandwich_tol = 0.0;
  bool sandwich_ok = false;
};

struct SweepReport
{
  std::vector<SweepRow> rows;
  std::array<std::optional<OrderFit>, 3> fits;
  std::array<std::string, 3> fit_notes;
  std::array<double, 3> coefficients{};
  std::string method;
  std::vector<double> h;
  std::string geometry;
  std::uint64_t geometry_hash = 0;
};

/// Rows for every δ₀ of the config, on the semi-analytic or FEM path, with
/// error fits over the guarded rows. Rows run on `jobs` worker threads and
/// are returned in config order.
SweepReport run_sweep(const RunConfig &cfg, int jobs = 1);

/// 17 significant digits.
std::string format_double(double x);

void write_sweep_csv(std::ostream &os, const SweepReport &report);
void write_sweep_fits(std::ostream &os, const SweepReport &report);
/// Log-log chart of the three error columns against δ with fitted lines.
std::string sweep_svg(const SweepReport &report);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::string &path, const std::string &content);

struct RunOptions
{
  // overrides the config output directory when set
  std::string output_dir;
  int jobs = 1;
};

/// Executes the config task, writes its artifacts and returns an exit code.
int run(const RunConfig &cfg, const RunOptions &opts, std::ostream &log);

} // namespace thinspec

#endif // THINSPEC_RUN_HPP
