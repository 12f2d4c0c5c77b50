// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "thinspec/asymptotics.hpp"
#include "thinspec/bessel.hpp"
#include "thinspec/disk.hpp"
#include "thinspec/error.hpp"
#include "thinspec/transmission.hpp"

namespace thinspec
{

namespace fs = std::filesystem;

namespace
{

constexpr double kRichardsonOrder = 2.0;

const char *flag(bool b) { return b ? "true" : "false"; }

std::string hex(std::uint64_t v)
{
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Runs body(i) for i in [0, count) on up to `jobs` threads and rethrows the
// first failure.
template <typename Body>
void parallel_for(std::size_t count, int jobs, Body body)
{
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, count);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
  {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++)
      {
        try
        {
          body(i);
        }
        catch (...)
        {
          std::lock_guard<std::mutex> lock(guard);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

struct MeshSample
{
  double lambda = 0.0, eroded = 0.0, lambda0 = 0.0;
  std::array<double, 3> pred{};
};

MeshSample fem_sample(const BoundaryCurve &curve, const LayerConfig &layer, double h, int steps)
{
  const TriMesh mesh = generate_mesh(curve, layer, h);
  const FemContext ctx(mesh);
  const AsymptoticCoefficients c = compute_coefficients(ctx, curve, layer.profile());
  MeshSample out;
  out.eroded = eroded_dirichlet(mesh);
  FirstTeOptions opts;
  opts.scan.steps = steps;
  out.lambda = first_te(mesh, layer.index(), c.lambda0, c.v0, out.eroded, opts).lambda;
  out.lambda0 = c.lambda0;
  for (int k = 0; k < 3; ++k)
    out.pred[k] = evaluate_expansion(c, layer.delta0(), k);
  return out;
}

std::pair<double, double> fem_mesh_pair(const std::vector<double> &h)
{
  std::vector<double> sorted = h;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double coarse = sorted.front();
  const double fine = sorted.size() > 1 ? sorted[1] : 0.5 * coarse;
  return {coarse, fine};
}

} // namespace

std::string format_double(double x)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SweepReport run_sweep(const RunConfig &cfg, int jobs)
{
  const BoundaryCurve curve = cfg.geometry.build();
  const bool disk = cfg.uses_disk_path();
  const Tolerances &tol = cfg.tolerances;
  SweepReport report;
  report.method = disk ? "disk" : "fem";
  report.geometry = cfg.describe();
  report.geometry_hash = fnv1a(report.geometry);
  report.rows.resize(cfg.delta0.size());

  if (disk)
  {
    const double radius = cfg.geometry.radius;
    const double g = cfg.g.mean();
    const DiskCoefficients c = disk_asymptotic_coeffs(radius, tol.radial_nodes, g);
    report.coefficients = {c.lambda0, c.lambda1, c.lambda2};
    const double j = bessel_j_zero(0, 1);
    parallel_for(cfg.delta0.size(), jobs, [&](std::size_t i) {
      SweepRow &row = report.rows[i];
      row.delta = cfg.delta0[i];
      DiskProblem prob{radius, row.delta * g, cfg.n.lower(), 0};
      DiskRootOptions opts;
      opts.step = tol.disk_step;
      opts.max_mode = tol.disk_max_mode;
      row.lambda_direct = disk_first_te(prob, opts).lambda;
      row.lambda_eroded = std::pow(j / (radius - prob.delta), 2);
      row.lambda0 = c.lambda0;
      const double d = row.delta;
      row.pred = {c.lambda0, c.lambda0 + d * c.lambda1, c.lambda0 + d * c.lambda1 + d * d * c.lambda2};
      for (int k = 0; k < 3; ++k)
      {
        row.err[k] = std::abs(row.lambda_direct - row.pred[k]);
        row.guard[k] = true;
      }
      row.sandwich_ok = row.lambda0 <= row.lambda_direct && row.lambda_direct <= row.lambda_eroded;
    });
  }
  else
  {
    const auto [coarse, fine] = fem_mesh_pair(cfg.h);
    report.h = {coarse, fine};
    const double ratio = coarse / fine;
    std::vector<MeshSample> samples(2 * cfg.delta0.size());
    parallel_for(samples.size(), jobs, [&](std::size_t task) {
      const std::size_t i = task / 2;
      const double h = task % 2 == 0 ? coarse : fine;
      const LayerConfig layer(cfg.delta0[i], cfg.g, cfg.n);
      samples[task] = fem_sample(curve, layer, h, tol.scan_steps);
    });
    for (std::size_t i = 0; i < cfg.delta0.size(); ++i)
    {
      const MeshSample &c = samples[2 * i], &f = samples[2 * i + 1];
      SweepRow &row = report.rows[i];
      row.delta = cfg.delta0[i];
      auto extrapolate = [&](double vc, double vf) { return richardson_limit(vc, vf, ratio, kRichardsonOrder); };
      auto estimate = [&](double vc, double vf) { return richardson_error(vc, vf, ratio, kRichardsonOrder); };
      row.lambda_direct = extrapolate(c.lambda, f.lambda);
      row.lambda_eroded = extrapolate(c.eroded, f.eroded);
      row.lambda0 = extrapolate(c.lambda0, f.lambda0);
      row.mesh_error_direct = estimate(c.lambda, f.lambda);
      for (int k = 0; k < 3; ++k)
      {
        row.pred[k] = extrapolate(c.pred[k], f.pred[k]);
        row.err[k] = std::abs(row.lambda_direct - row.pred[k]);
        row.mesh_error[k] = estimate(c.lambda - c.pred[k], f.lambda - f.pred[k]);
        row.guard[k] = row.mesh_error[k] <= tol.guard_ratio * row.err[k];
      }
      const double mesh_error = std::max({row.mesh_error_direct, estimate(c.lambda0, f.lambda0),
                                          estimate(c.eroded, f.eroded)});
      row.sandwich_tol = tol.sandwich_factor * mesh_error;
      row.sandwich_ok = row.lambda0 - row.sandwich_tol <= row.lambda_direct &&
                        row.lambda_direct <= row.lambda_eroded + row.sandwich_tol;
    }
    // coefficients recovered from the extrapolated predictions of the thinnest row
    const std::size_t last = cfg.delta0.size() - 1;
    const double d = cfg.delta0[last];
    const SweepRow &row = report.rows[last];
    report.coefficients = {row.pred[0], (row.pred[1] - row.pred[0]) / d, (row.pred[2] - row.pred[1]) / (d * d)};
  }

  for (int k = 0; k < 3; ++k)
  {
    std::vector<double> x, e;
    for (const SweepRow &row : report.rows)
    {
      if (row.guard[k])
      {
        x.push_back(row.delta);
        e.push_back(row.err[k]);
      }
    }
    try
    {
      report.fits[k] = fit_order(x, e);
      for (const std::string &note : report.fits[k]->notes)
        report.fit_notes[k] += (report.fit_notes[k].empty() ? "" : "; ") + note;
    }
    catch (const Error &err)
    {
      if (err.code() != ErrorCode::InsufficientData)
        throw;
      report.fit_notes[k] = "insufficient guarded rows (" + std::to_string(x.size()) + ")";
    }
  }
  return report;
}

void write_sweep_csv(std::ostream &os, const SweepReport &report)
{
  os << kSweepHeader << "\n";
  for (const SweepRow &r : report.rows)
  {
    os << format_double(r.delta) << ',' << format_double(r.lambda_direct) << ',' << format_double(r.lambda_eroded);
    for (double p : r.pred)
      os << ',' << format_double(p);
    for (double e : r.err)
      os << ',' << format_double(e);
    os << ',' << flag(r.sandwich_ok) << ',' << flag(r.guard[1]) << "\n";
  }
}

void write_sweep_fits(std::ostream &os, const SweepReport &report)
{
  os << "# thinspec " << kVersion << "\n";
  os << "# geometry " << report.geometry << "\n";
  os << "# geometry_hash " << hex(report.geometry_hash) << "\n";
  os << "# method " << report.method << "\n";
  os << "# h";
  for (double h : report.h)
    os << ' ' << format_double(h);
  os << "\n";
  os << "# lambda0 " << format_double(report.coefficients[0]) << "\n";
  os << "# lambda1 " << format_double(report.coefficients[1]) << "\n";
  os << "# lambda2 " << format_double(report.coefficients[2]) << "\n";
  os << "order,slope,intercept,r_squared,rows_used,note\n";
  for (int k = 0; k < 3; ++k)
  {
    os << k << ',';
    if (report.fits[k])
    {
      os << format_double(report.fits[k]->slope) << ',' << format_double(report.fits[k]->intercept) << ','
         << format_double(report.fits[k]->r_squared) << ',' << report.fits[k]->used;
    }
    else
    {
      os << "nan,nan,nan,0";
    }
    os << ',' << report.fit_notes[k] << "\n";
  }
  os << "\ndelta,sandwich_tol,mesh_error_direct,mesh_error0,mesh_error1,mesh_error2,guard0,guard1,guard2\n";
  for (const SweepRow &r : report.rows)
  {
    os << format_double(r.delta) << ',' << format_double(r.sandwich_tol) << ',' << format_double(r.mesh_error_direct);
    for (double e : r.mesh_error)
      os << ',' << format_double(e);
    for (bool g : r.guard)
      os << ',' << flag(g);
    os << "\n";
  }
}

std::string sweep_svg(const SweepReport &report)
{
  const double width = 640, height = 480, left = 70, right = 20, top = 20, bottom = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const SweepRow &r : report.rows)
  {
    xmin = std::min(xmin, std::log10(r.delta));
    xmax = std::max(xmax, std::log10(r.delta));
    for (double e : r.err)
    {
      if (e > 0.0)
      {
        ymin = std::min(ymin, std::log10(e));
        ymax = std::max(ymax, std::log10(e));
      }
    }
  }
  if (!(xmax > xmin))
  {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymax > ymin))
  {
    ymin = (ymin < 1e300 ? ymin : 0.0) - 0.5;
    ymax = ymin + 1.0;
  }
  xmin = std::floor(xmin);
  xmax = std::ceil(xmax);
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  auto px = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * (width - left - right); };
  auto py = [&](double ly) { return height - bottom - (ly - ymin) / (ymax - ymin) * (height - top - bottom); };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
     << "\" stroke=\"black\"/>\n";
  for (double d = xmin; d <= xmax + 1e-9; d += 1.0)
    os << "<text x=\"" << px(d) << "\" y=\"" << height - bottom + 20 << "\" font-size=\"12\" text-anchor=\"middle\">1e"
       << static_cast<int>(d) << "</text>\n";
  for (double d = ymin; d <= ymax + 1e-9; d += 1.0)
    os << "<text x=\"" << left - 8 << "\" y=\"" << py(d) + 4 << "\" font-size=\"12\" text-anchor=\"end\">1e"
       << static_cast<int>(d) << "</text>\n";
  os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10
     << "\" font-size=\"13\" text-anchor=\"middle\">delta</text>\n";
  os << "<text x=\"16\" y=\"" << (top + height - bottom) / 2 << "\" font-size=\"13\" transform=\"rotate(-90 16 "
     << (top + height - bottom) / 2 << ")\" text-anchor=\"middle\">error</text>\n";

  const char *colours[3] = {"#1f77b4", "#d62728", "#2ca02c"};
  for (int k = 0; k < 3; ++k)
  {
    for (const SweepRow &r : report.rows)
    {
      if (r.err[k] > 0.0)
        os << "<circle cx=\"" << px(std::log10(r.delta)) << "\" cy=\"" << py(std::log10(r.err[k]))
           << "\" r=\"4\" fill=\"" << colours[k] << "\"/>\n";
    }
    if (report.fits[k])
    {
      const auto &f = *report.fits[k];
      const double lx0 = std::log10(report.rows.back().delta), lx1 = std::log10(report.rows.front().delta);
      auto line_y = [&](double lx) { return (f.intercept + f.slope * lx * std::log(10.0)) / std::log(10.0); };
      os << "<line x1=\"" << px(lx0) << "\" y1=\"" << py(line_y(lx0)) << "\" x2=\"" << px(lx1) << "\" y2=\""
         << py(line_y(lx1)) << "\" stroke=\"" << colours[k] << "\"/>\n";
      os << "<text x=\"" << width - right - 150 << "\" y=\"" << top + 16 * (k + 1) << "\" font-size=\"12\" fill=\""
         << colours[k] << "\">err" << k << " slope " << std::setprecision(3) << f.slope << std::setprecision(2)
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

void write_file_atomic(const std::string &path, const std::string &content)
{
  const fs::path target(path);
  if (target.has_parent_path())
    fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out)
      throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec)
    throw Error(ErrorCode::IoError, "cannot rename " + tmp.string() + ": " + ec.message());
}

namespace
{

std::string join(const std::string &dir, const std::string &name) { return (fs::path(dir) / name).string(); }

int task_sweep(const RunConfig &cfg, const std::string &dir, int jobs, std::ostream &log)
{
  const SweepReport report = run_sweep(cfg, jobs);
  std::ostringstream csv, fits;
  write_sweep_csv(csv, report);
  write_sweep_fits(fits, report);
  write_file_atomic(join(dir, "sweep.csv"), csv.str());
  write_file_atomic(join(dir, "sweep_fits.csv"), fits.str());
  write_file_atomic(join(dir, "sweep.svg"), sweep_svg(report));

  int status = kExitOk;
  for (const SweepRow &r : report.rows)
  {
    if (!r.sandwich_ok)
    {
      log << "sandwich violated at delta = " << format_double(r.delta) << "\n";
      status = kExitValidationFailure;
    }
  }
  for (std::size_t k = 0; k < cfg.tolerances.min_slope.size(); ++k)
  {
    const double need = cfg.tolerances.min_slope[k];
    if (std::isnan(need))
      continue;
    if (!report.fits[k] || report.fits[k]->slope < need)
    {
      log << "order " << k << " slope below " << need << "\n";
      status = kExitValidationFailure;
    }
  }
  for (int k = 0; k < 3; ++k)
  {
    log << "err" << k << " slope "
        << (report.fits[k] ? format_double(report.fits[k]->slope) : std::string("n/a")) << "\n";
  }
  return status;
}

int task_coeffs(const RunConfig &cfg, const std::string &dir, std::ostream &log)
{
  const BoundaryCurve curve = cfg.geometry.build();
  std::ostringstream csv, record;
  csv << "# geometry " << cfg.describe() << "\n";
  csv << "h,lambda0,lambda1,lambda2,multiplier,geometry_hash\n";
  std::vector<std::array<double, 3>> values;
  std::vector<double> hs = cfg.h;
  std::sort(hs.begin(), hs.end(), std::greater<>());
  for (double h : hs)
  {
    const FemContext ctx(generate_mesh(curve, std::nullopt, h));
    AsymptoticCoefficients c = compute_coefficients(ctx, curve, cfg.g);
    c.geometry_hash = fnv1a(cfg.describe());
    csv << format_double(h) << ',' << format_double(c.lambda0) << ',' << format_double(c.lambda1) << ','
        << format_double(c.lambda2) << ',' << format_double(c.multiplier) << ',' << hex(c.geometry_hash) << "\n";
    write_coefficients(record, c, cfg.describe() + " h=" + format_double(h));
    values.push_back({c.lambda0, c.lambda1, c.lambda2});
  }
  if (values.size() >= 3)
  {
    const std::size_t n = values.size();
    const double ratio = hs[n - 2] / hs[n - 1];
    for (int k = 0; k < 3; ++k)
    {
      const double p = observed_order(values[n - 3][k], values[n - 2][k], values[n - 1][k], ratio);
      csv << "# observed_order lambda" << k << ' ' << format_double(p) << "\n";
      log << "lambda" << k << " observed order " << format_double(p) << "\n";
    }
  }
  write_file_atomic(join(dir, "coeffs.csv"), csv.str());
  write_file_atomic(join(dir, "coefficients.txt"), record.str());
  return kExitOk;
}

int task_direct(const RunConfig &cfg, const std::string &dir, std::ostream &log)
{
  const BoundaryCurve curve = cfg.geometry.build();
  const double h = *std::min_element(cfg.h.begin(), cfg.h.end());
  std::ostringstream csv;
  csv << "delta,h,lambda_direct,lambda0,lambda_dirichlet_eroded,sandwich_ok,dofs\n";
  int status = kExitOk;
  for (std::size_t i = 0; i < cfg.delta0.size(); ++i)
  {
    const LayerConfig layer(cfg.delta0[i], cfg.g, cfg.n);
    FirstTeOptions opts;
    opts.scan.steps = cfg.tolerances.scan_steps;
    const TransmissionResult te = first_te(curve, layer, h, opts);
    const bool ok = te.lambda0 * (1.0 - 1e-6) <= te.lambda && te.lambda <= te.lambda_dirichlet_eroded * (1.0 + 1e-6);
    if (!ok)
      status = kExitValidationFailure;
    csv << format_double(cfg.delta0[i]) << ',' << format_double(h) << ',' << format_double(te.lambda) << ','
        << format_double(te.lambda0) << ',' << format_double(te.lambda_dirichlet_eroded) << ',' << flag(ok) << ','
        << te.dofs << "\n";
    std::ostringstream scan;
    write_scan_csv(scan, te.scan);
    write_file_atomic(join(dir, "scan_" + std::to_string(i) + ".csv"), scan.str());
    log << "delta " << format_double(cfg.delta0[i]) << " lambda " << format_double(te.lambda) << "\n";
  }
  write_file_atomic(join(dir, "direct.csv"), csv.str());
  return status;
}

int task_disk_oracle(const RunConfig &cfg, const std::string &dir, std::ostream &log)
{
  const double radius = cfg.geometry.radius;
  const double g = cfg.g.mean();
  const DiskCoefficients c = disk_asymptotic_coeffs(radius, cfg.tolerances.radial_nodes, g);
  std::ostringstream csv;
  csv << "quantity,value\n";
  csv << "lambda0," << format_double(c.lambda0) << "\n";
  csv << "lambda1," << format_double(c.lambda1) << "\n";
  csv << "lambda2," << format_double(c.lambda2) << "\n";
  csv << "flux0," << format_double(c.flux0) << "\n";
  csv << "flux1," << format_double(c.flux1) << "\n";
  write_file_atomic(join(dir, "disk_oracle.csv"), csv.str());
  if (!cfg.delta0.empty())
  {
    const double j = bessel_j_zero(0, 1);
    std::ostringstream te;
    te << "delta,lambda_direct,mode,lambda_dirichlet_eroded\n";
    for (double d : cfg.delta0)
    {
      DiskRootOptions opts;
      opts.step = cfg.tolerances.disk_step;
      opts.max_mode = cfg.tolerances.disk_max_mode;
      const DiskRoot root = disk_first_te(DiskProblem{radius, d * g, cfg.n.lower(), 0}, opts);
      te << format_double(d) << ',' << format_double(root.lambda) << ',' << root.mode << ','
         << format_double(std::pow(j / (radius - d * g), 2)) << "\n";
    }
    write_file_atomic(join(dir, "disk_oracle_te.csv"), te.str());
  }
  log << "lambda0 " << format_double(c.lambda0) << " lambda1 " << format_double(c.lambda1) << " lambda2 "
      << format_double(c.lambda2) << "\n";
  return kExitOk;
}

int task_validate(const RunConfig &cfg, const std::string &dir, std::ostream &log)
{
  const BoundaryCurve curve = cfg.geometry.build();
  const double h = *std::min_element(cfg.h.begin(), cfg.h.end());
  const FemContext ctx(generate_mesh(curve, std::nullopt, h));
  const AsymptoticCoefficients c = compute_coefficients(ctx, curve, cfg.g);
  const LayerProfile prof = layer_profiles(c, curve, cfg.g);

  struct Check
  {
    std::string name;
    double value, limit;
  };
  std::vector<Check> checks;
  checks.push_back({"v0_norm", std::abs(std::sqrt(c.v0.dot(ctx.mass * c.v0)) - 1.0), 1e-8});
  checks.push_back({"v0_sign", c.v0[ctx.centre_vertex()] > 0.0 ? 0.0 : 1.0, 0.0});
  checks.push_back({"orthogonality", std::abs(c.v1.dot(ctx.mass * c.v0)), 1e-8});
  checks.push_back({"fredholm_multiplier", std::abs(c.multiplier) / c.lambda1, 1e-6});
  double bc_w = 0.0, bc_v = 0.0, bc_dw = 0.0;
  for (std::size_t k = 0; k < ctx.mesh.outer.size(); ++k)
  {
    const double s = ctx.mesh.outer_s[k];
    const double g = prof.thickness(s);
    bc_w = std::max({bc_w, std::abs(prof.w1(s, g)), std::abs(prof.w2(s, g))});
    bc_v = std::max(bc_v, std::abs(prof.w1(s, 0.0) - c.v1[ctx.mesh.outer[k]]));
    bc_dw = std::max(bc_dw, std::abs(prof.dw2_dxi(s, 0.0) - c.flux1(s)));
  }
  checks.push_back({"profile_zero_at_g", bc_w, 1e-12});
  checks.push_back({"profile_trace_matches_v1", bc_v, 1e-12});
  checks.push_back({"profile_flux_matches_v1", bc_dw, 1e-12});
  {
    AsymptoticCoefficients z = compute_lambda0(ctx);
    const ThicknessProfile zero = ThicknessProfile::constant(0.0);
    compute_lambda1(z, ctx, curve, zero);
    compute_v1(z, ctx, curve, zero);
    compute_lambda2(z, ctx, curve, zero);
    checks.push_back({"zero_thickness_collapse", std::abs(evaluate_expansion(z, 0.05, 2) - z.lambda0), 0.0});
  }
  for (std::size_t i = 0; i < cfg.delta0.size(); ++i)
  {
    const LayerConfig layer(cfg.delta0[i], cfg.g, cfg.n);
    const TransmissionResult te = first_te(curve, layer, h);
    const double below = std::max(0.0, te.lambda0 - te.lambda);
    const double above = std::max(0.0, te.lambda - te.lambda_dirichlet_eroded);
    checks.push_back({"sandwich_delta_" + format_double(cfg.delta0[i]), std::max(below, above) / te.lambda0, 1e-6});
    checks.push_back({"rayleigh_identity_delta_" + format_double(cfg.delta0[i]),
                      rayleigh_identity_residual(generate_mesh(curve, layer, h), te.lambda, te.v, te.w,
                                                 layer.index()),
                      1e-8});
  }

  std::ostringstream csv;
  csv << "check,value,limit,ok\n";
  int status = kExitOk;
  for (const Check &ch : checks)
  {
    const bool ok = ch.value <= ch.limit;
    if (!ok)
    {
      status = kExitValidationFailure;
      log << "check " << ch.name << " failed: " << format_double(ch.value) << " > " << format_double(ch.limit)
          << "\n";
    }
    csv << ch.name << ',' << format_double(ch.value) << ',' << format_double(ch.limit) << ',' << flag(ok) << "\n";
  }
  write_file_atomic(join(dir, "validate.csv"), csv.str());
  return status;
}

} // namespace

int run(const RunConfig &cfg, const RunOptions &opts, std::ostream &log)
{
  const std::string dir = opts.output_dir.empty() ? cfg.output_dir : opts.output_dir;
  try
  {
    switch (cfg.task)
    {
    case Task::Sweep:
      return task_sweep(cfg, dir, opts.jobs, log);
    case Task::Coeffs:
      return task_coeffs(cfg, dir, log);
    case Task::Direct:
      return task_direct(cfg, dir, log);
    case Task::DiskOracle:
      return task_disk_oracle(cfg, dir, log);
    case Task::Validate:
      return task_validate(cfg, dir, log);
    }
  }
  catch (const Error &e)
  {
    log << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? kExitConfigError : kExitSolverError;
  }
  catch (const std::exception &e)
  {
    log << "error: " << e.what() << "\n";
    return kExitSolverError;
  }
  return kExitSolverError;
}

} // namespace thinspec
