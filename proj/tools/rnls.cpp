// Command-line front end: rnls <subcommand> [flags]

#include <omp.h>

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "rnls/run.hpp"

namespace {

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2, kAbort = 3 };

int thread_count(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("RESONANT_NLS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
    std::cerr << "ERROR kind=usage message=\"RESONANT_NLS_THREADS must be a positive integer\"\n";
    std::exit(kUsage);
  }
  return 0;
}

void print_error(const char* kind, const std::string& message) {
  std::string flat = message;
  for (auto& ch : flat) {
    if (ch == '\n') ch = ';';
    if (ch == '"') ch = '\'';
  }
  std::cerr << "ERROR kind=" << kind << " message=\"" << flat << "\"\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonant cubic NLS system: simulation and diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  int threads = 0;
  app.add_option("--config", config_path, "Run configuration file (key = value)");
  app.add_option("--seed", seed, "Random seed, overrides the config");
  app.add_option("--out", out_dir, "Output directory, overrides the config");
  app.add_option("--threads", threads, "Worker threads (fallback: RESONANT_NLS_THREADS)")->check(CLI::PositiveNumber);

  rnls::RunRequest request;
  std::vector<double> xi0;
  std::vector<double> x0;
  std::string trajectory;

  app.add_subcommand("simulate", "Evolve the configured initial data and write diagnostics");
  auto* resonance = app.add_subcommand("verify-resonance", "Check the resonance collapse and kernel sums");
  resonance->add_option("--jmax", request.jmax, "Largest |j| checked")->check(CLI::NonNegativeNumber);
  resonance->add_option("--band", request.band, "Band radius J (default: jmax)");
  app.add_subcommand("measure-bilinear", "Fit the bilinear Strichartz scaling slope");
  app.add_subcommand("morawetz", "Interaction Morawetz functional along a run");
  app.add_subcommand("scatter-probe", "Scattering diagnostics along a run");
  auto* cov = app.add_subcommand("covariance", "PDE residual of a transformed trajectory");
  cov->add_option("--theta", request.element.theta, "Phase");
  cov->add_option("--xi0", xi0, "Galilean frequency (two values)")->expected(2);
  cov->add_option("--x0", x0, "Translation (two values)")->expected(2);
  cov->add_option("--lambda", request.element.lambda, "Dyadic scale");
  cov->add_option("--trajectory", trajectory, "Snapshot directory (default: simulate from config)");

  CLI11_PARSE(app, argc, argv);

  request.subcommand = app.get_subcommands().front()->get_name();
  if (xi0.size() == 2) request.element.xi0 = {xi0[0], xi0[1]};
  if (x0.size() == 2) request.element.x0 = {x0[0], x0[1]};
  if (!trajectory.empty()) request.trajectory_dir = trajectory;

  if (const int n = thread_count(threads); n > 0) omp_set_num_threads(n);

  try {
    request.config = config_path.empty() ? rnls::parse_config("") : rnls::load_config(config_path);
    if (seed) request.config.seed = *seed;
    if (out_dir) request.config.output_dir = *out_dir;
  } catch (const rnls::ConfigError& e) {
    for (const auto& v : e.violations()) print_error("config", v);
    return kUsage;
  }

  try {
    const rnls::RunOutcome outcome = rnls::run(request);
    std::cout << outcome.verdict << std::endl;
    return outcome.pass ? kPass : kFail;
  } catch (const rnls::DomainError& e) {
    print_error("domain", e.what());
    return kUsage;
  } catch (const rnls::ResolutionError& e) {
    print_error("resolution", e.what());
    return kAbort;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return kAbort;
  }
}
