#include "rnls/run.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rnls/diagnostics.hpp"
#include "rnls/dynamics.hpp"
#include "rnls/snapshot.hpp"

namespace fs = std::filesystem;

namespace rnls {

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"simulate",     "verify-resonance", "measure-bilinear",
                                                 "morawetz",     "scatter-probe",    "covariance"};
  return names;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "' for checksum");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buffer[1 << 16];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx, buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

namespace {

/// Collects `key=value` fields for the verdict line.
class Verdict {
public:
  Verdict& add(const std::string& key, Real value) { return add(key, format_real(value)); }
  Verdict& add(const std::string& key, const std::string& value) {
    fields_ += " " + key + "=" + value;
    return *this;
  }
  std::string line(const std::string& subcommand, bool pass) const {
    return subcommand + (pass ? " PASS" : " FAIL") + fields_;
  }

private:
  std::string fields_;
};

class CsvFile {
public:
  CsvFile(const fs::path& path, const std::string& header) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    out_ << header << '\n';
  }
  template <typename... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(values), first = false), ...);
    out_ << '\n';
  }
  const fs::path& path() const { return path_; }
  std::ostream& stream() { return out_; }
  void close() { out_.close(); }

private:
  static std::string cell(Real v) { return format_real(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  static std::string cell(bool v) { return v ? "true" : "false"; }

  fs::path path_;
  std::ofstream out_;
};

struct Context {
  const RunRequest& request;
  const RunConfig& config;
  fs::path dir;
  RunOutcome outcome;
  std::vector<std::string> extra_echo;
};

VectorField initial_state(const RunConfig& c, const SpatialGrid& grid) {
  const ModeBand band(c.band_radius);
  InitialDataSpec spec = c.data;
  spec.modes = c.data_modes();
  Rng rng(c.seed);
  return make_initial_data(grid, band, spec, rng);
}

Real relative_change(Real a, Real b) {
  const Real scale = std::abs(a);
  return scale > 0.0 ? std::abs(b - a) / scale : std::abs(b - a);
}

void simulate(Context& ctx) {
  const RunConfig& c = ctx.config;
  const SpatialGrid grid(c.half_width, c.grid_points);
  const VectorField u0 = initial_state(c, grid);

  std::vector<Observer> observers;
  const fs::path snap_dir = ctx.dir / "snapshots";
  int snap_index = 0;
  if (c.write_snapshots) {
    fs::create_directories(snap_dir);
    observers.push_back([&](std::int64_t, Real t, const VectorField& u) {
      const fs::path path = snap_dir / snapshot_file_name(snap_index++);
      write_snapshot(path, t, u);
      ctx.outcome.artifacts.push_back(path);
    });
  }
  const EvolveResult result = evolve(u0, c.stepper, observers, c.diagnostics);

  CsvFile csv(ctx.dir / "diagnostics.csv", diagnostics_csv_header());
  for (const auto& r : result.records) write_csv_row(csv.stream(), r);
  csv.close();
  ctx.outcome.artifacts.insert(ctx.outcome.artifacts.begin(), csv.path());

  const auto& first = result.records.front();
  const auto& last = result.records.back();
  ctx.outcome.pass = true;
  ctx.outcome.verdict = Verdict()
                            .add("steps", std::to_string(c.stepper.steps()))
                            .add("mass_drift", relative_change(first.mass, last.mass))
                            .add("energy_drift", relative_change(first.energy, last.energy))
                            .add("l4_accum", last.l4_accum)
                            .line("simulate", true);
}

void verify_resonance(Context& ctx) {
  const int jmax = ctx.request.jmax;
  const int radius = ctx.request.band.value_or(jmax);
  if (jmax < 0) throw DomainError("--jmax must be >= 0");
  if (radius < jmax) throw DomainError("--band must be >= --jmax");
  const ModeBand band(radius);
  ctx.extra_echo.push_back("jmax = " + std::to_string(jmax));
  ctx.extra_echo.push_back("band = " + std::to_string(radius));

  // Bound 2 sum_{k in Z} <k>^-4 in closed form.
  const Real series = 0.5 * M_PI / std::tanh(M_PI) + 0.5 * M_PI * M_PI / std::pow(std::sinh(M_PI), 2);
  CsvFile csv(ctx.dir / "resonance.csv", "j,count,kernel_sum,closed_form_match");
  bool all_match = true;
  Real worst_kernel = 0.0;
  for (int j = -jmax; j <= jmax; ++j) {
    const auto enumerated = enumerate_resonances(j, band);
    const bool match = enumerated == closed_form_resonances(j, band);
    const Real k = kernel_sum(j, band);
    all_match = all_match && match;
    worst_kernel = std::max(worst_kernel, k);
    csv.row(j, enumerated.size(), k, match);
  }
  csv.close();
  ctx.outcome.artifacts.push_back(csv.path());
  const bool pass = all_match && worst_kernel <= 2.0 * series;
  ctx.outcome.pass = pass;
  ctx.outcome.verdict = Verdict()
                            .add("modes", std::to_string(2 * jmax + 1))
                            .add("closed_form_match", all_match ? "true" : "false")
                            .add("max_kernel_sum", worst_kernel)
                            .add("kernel_bound", 2.0 * series)
                            .line("verify-resonance", pass);
}

void measure_bilinear(Context& ctx) {
  BilinearProbeSpec spec = ctx.config.bilinear;
  spec.seed = ctx.config.seed;
  const BilinearFit fit = bilinear_probe(spec);
  CsvFile csv(ctx.dir / "bilinear.csv", "ratio,value");
  for (const auto& s : fit.samples) csv.row(s.ratio, s.value);
  csv.close();
  ctx.outcome.artifacts.push_back(csv.path());
  const Real target = std::isinf(spec.p) ? 0.0 : 1.0 / spec.p;
  const bool pass = std::abs(fit.slope - target) <= 0.15 && fit.r_squared >= 0.98;
  ctx.outcome.pass = pass;
  ctx.outcome.verdict = Verdict()
                            .add("slope", fit.slope)
                            .add("target", target)
                            .add("r_squared", fit.r_squared)
                            .add("slope_stderr", fit.slope_stderr)
                            .add("intercept", fit.intercept)
                            .line("measure-bilinear", pass);
}

void morawetz(Context& ctx) {
  const RunConfig& c = ctx.config;
  const SpatialGrid grid(c.half_width, c.grid_points);
  const VectorField u0 = initial_state(c, grid);
  const Cutoff cutoff = c.diagnostics.morawetz_cutoff;
  const MorawetzEvaluator evaluate(grid);

  CsvFile csv(ctx.dir / "morawetz.csv", "t,morawetz,ceiling,density_norm,lhs");
  bool ceiling_holds = true;
  Real worst = 0.0;
  Real lhs = 0.0;
  Real last_t = 0.0;
  Real last_density = 0.0;
  bool first = true;
  Observer observer = [&](std::int64_t, Real t, const VectorField& u) {
    const Real m = evaluate(u, cutoff);
    const Real ceiling = morawetz_ceiling(u, cutoff);
    const Real density = morawetz_density_norm(u, cutoff);
    if (!first) lhs += 0.5 * (t - last_t) * (density + last_density);
    first = false;
    last_t = t;
    last_density = density;
    if (std::abs(m) > ceiling * (1.0 + 1e-12)) ceiling_holds = false;
    if (ceiling > 0.0) worst = std::max(worst, std::abs(m) / ceiling);
    csv.row(t, m, ceiling, density, lhs);
  };
  DiagnosticsOptions options = c.diagnostics;
  options.morawetz = false;
  options.params = false;
  evolve(u0, c.stepper, {observer}, options);
  csv.close();
  ctx.outcome.artifacts.push_back(csv.path());
  ctx.outcome.pass = ceiling_holds;
  ctx.outcome.verdict = Verdict()
                            .add("max_ceiling_ratio", worst)
                            .add("lhs", lhs)
                            .add("lhs_over_T", lhs / c.stepper.horizon)
                            .line("morawetz", ceiling_holds);
}

void scatter_probe(Context& ctx) {
  const RunConfig& c = ctx.config;
  const SpatialGrid grid(c.half_width, c.grid_points);
  const VectorField u0 = initial_state(c, grid);
  ScatterProbe probe(c.scatter.windows);
  int snapshots = 0;
  Observer observer = [&](std::int64_t, Real t, const VectorField& u) {
    probe.add(t, u);
    ++snapshots;
  };
  DiagnosticsOptions options = c.diagnostics;
  options.morawetz = false;
  options.params = false;
  evolve(u0, c.stepper, {observer}, options);
  if (snapshots < kScatterMinSnapshots) {
    throw DomainError("scatter-probe needs at least " + std::to_string(kScatterMinSnapshots) +
                      " snapshots; lower stepper.snapshot_stride");
  }
  const ScatterReport report = probe.report();

  CsvFile csv(ctx.dir / "scatter.csv", "t,l4_running,gap");
  for (std::size_t n = 0; n < report.times.size(); ++n) {
    csv.row(report.times[n], report.l4_running[n], n == 0 ? 0.0 : report.gaps[n - 1]);
  }
  csv.close();
  CsvFile windows(ctx.dir / "scatter_windows.csv", "window,t_start,t_end,value,tail");
  const Real t0 = report.times.front();
  const Real width = (report.times.back() - t0) / c.scatter.windows;
  for (int w = 0; w < c.scatter.windows; ++w) {
    windows.row(w, t0 + w * width, t0 + (w + 1) * width, report.window_values[w], report.tails[w]);
  }
  windows.close();
  ctx.outcome.artifacts.push_back(csv.path());
  ctx.outcome.artifacts.push_back(windows.path());

  const bool small = report.small_data(c.scatter.threshold);
  const bool monotone = report.gaps_monotone_after(c.scatter.onset);
  const bool pass = small && monotone;
  ctx.outcome.pass = pass;
  ctx.outcome.verdict = Verdict()
                            .add("last_window_fraction", report.last_window_fraction())
                            .add("threshold", c.scatter.threshold)
                            .add("gaps_monotone", monotone ? "true" : "false")
                            .add("final_gap", report.final_gap())
                            .add("l4_total", report.total())
                            .line("scatter-probe", pass);
}

void covariance(Context& ctx) {
  const RunConfig& c = ctx.config;
  const GroupElement& g = ctx.request.element;
  g.validate();
  Trajectory trajectory;
  if (ctx.request.trajectory_dir) {
    trajectory = load_trajectory(*ctx.request.trajectory_dir);
    ctx.extra_echo.push_back("trajectory = " + ctx.request.trajectory_dir->string());
  } else {
    const SpatialGrid grid(c.half_width, c.grid_points);
    Observer keep = [&](std::int64_t, Real t, const VectorField& u) { trajectory.push_back({t, u}); };
    DiagnosticsOptions options = c.diagnostics;
    options.morawetz = false;
    options.params = false;
    evolve(initial_state(c, grid), c.stepper, {keep}, options);
  }
  ctx.extra_echo.push_back("element = " + format_real(g.theta) + ", " + format_real(g.xi0[0]) + ", " +
                           format_real(g.xi0[1]) + ", " + format_real(g.x0[0]) + ", " +
                           format_real(g.x0[1]) + ", " + format_real(g.lambda));

  const CovarianceReport base = verify_covariance(GroupElement::identity(), trajectory);
  const CovarianceReport moved = verify_covariance(g, trajectory);
  const Real ratio = base.max_residual > 0.0 ? moved.max_residual / base.max_residual
                                             : (moved.max_residual > 0.0 ? INFINITY : 1.0);
  const bool pass = ratio <= c.covariance_max_ratio;

  CsvFile csv(ctx.dir / "covariance.csv",
              "element,theta,xi0_1,xi0_2,x0_1,x0_2,lambda,max_residual,ratio,snapshot_spacing,verdict");
  const GroupElement id = GroupElement::identity();
  csv.row("identity", id.theta, id.xi0[0], id.xi0[1], id.x0[0], id.x0[1], id.lambda, base.max_residual, 1.0,
          base.snapshot_spacing, "PASS");
  csv.row("element", g.theta, g.xi0[0], g.xi0[1], g.x0[0], g.x0[1], g.lambda, moved.max_residual, ratio,
          moved.snapshot_spacing, pass ? "PASS" : "FAIL");
  csv.close();
  ctx.outcome.artifacts.push_back(csv.path());
  ctx.outcome.pass = pass;
  ctx.outcome.verdict = Verdict()
                            .add("residual", moved.max_residual)
                            .add("baseline", base.max_residual)
                            .add("ratio", ratio)
                            .add("max_ratio", c.covariance_max_ratio)
                            .add("snapshot_spacing", moved.snapshot_spacing)
                            .line("covariance", pass);
}

void write_manifest(const Context& ctx) {
  const fs::path path = ctx.dir / (ctx.request.subcommand + ".manifest");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "subcommand = " << ctx.request.subcommand << "\n";
  for (const auto& line : ctx.extra_echo) out << line << "\n";
  out << "\n[config]\n" << echo(ctx.config) << "\n[artifacts]\n";
  for (const auto& a : ctx.outcome.artifacts) {
    out << fs::relative(a, ctx.dir).generic_string() << " sha256=" << sha256_file(a) << "\n";
  }
  out << "\n[verdict]\n" << ctx.outcome.verdict << "\n";
}

} // namespace

RunOutcome run(const RunRequest& request) {
  Context ctx{request, request.config, fs::path(request.config.output_dir), {}, {}};
  fs::create_directories(ctx.dir);
  const std::string& s = request.subcommand;
  if (s == "simulate") {
    simulate(ctx);
  } else if (s == "verify-resonance") {
    verify_resonance(ctx);
  } else if (s == "measure-bilinear") {
    measure_bilinear(ctx);
  } else if (s == "morawetz") {
    morawetz(ctx);
  } else if (s == "scatter-probe") {
    scatter_probe(ctx);
  } else if (s == "covariance") {
    covariance(ctx);
  } else {
    throw DomainError("unknown subcommand '" + s + "'");
  }
  write_manifest(ctx);
  ctx.outcome.artifacts.push_back(ctx.dir / (s + ".manifest"));
  return ctx.outcome;
}

} // namespace rnls
