#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tline/config.hpp"
#include "tline/ensemble.hpp"
#include "tline/errors.hpp"
#include "tline/output.hpp"
#include "tline/simulator.hpp"

namespace {

// Exit codes: 0 run completed without conductor failure, 10 completed with a
// detected failure, 1 validation problem, 2 solver failure, 3 I/O failure.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitIo = 3;
constexpr int kExitCompletedFailed = 10;

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::string reference_dir;
  std::size_t workers = 0;
  bool seed_set = false;
  std::uint64_t seed = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tline::validation_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

tline::io::ConfigFile prepare_config(const CliOptions& opt, std::string& bytes) {
  bytes = read_file(opt.config_path);
  tline::io::ConfigFile config = tline::io::parse_config(bytes);
  if (!opt.out_dir.empty()) config.output.directory = opt.out_dir;
  if (opt.seed_set) config.stochastic.seed = opt.seed;
  return config;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_run(const CliOptions& opt) {
  std::string bytes;
  const tline::io::ConfigFile config = prepare_config(opt, bytes);
  config.run.validate();

  const auto start = std::chrono::steady_clock::now();
  const tline::sim::RunResult result = tline::sim::run(config.run);
  tline::io::write_run_bundle(config.output.directory, config, bytes, result,
                              seconds_since(start));

  if (result.failed) {
    std::cout << "completed with failure at t = " << *result.failure_time << " yr ("
              << result.steps_completed << " steps); results in " << config.output.directory
              << "\n";
    return kExitCompletedFailed;
  }
  std::cout << "completed without failure over " << result.steps_completed
            << " steps; results in " << config.output.directory << "\n";
  return kExitOk;
}

tline::uq::EnsembleStats run_ensemble(const tline::io::ConfigFile& config,
                                      const std::vector<tline::uq::RandomParam>& dims,
                                      std::size_t workers) {
  if (config.stochastic.mode == tline::io::UqMode::pcm) {
    if (dims.size() > 6) {
      throw tline::validation_error(
          "stochastic dimension k > 6: the full tensor product grows as n^k; reduce the "
          "parameter set or switch mode to 'mc'");
    }
    return tline::uq::run_pcm_ensemble(config.run, dims, config.stochastic.n_per_dim, workers);
  }
  return tline::uq::run_mc_ensemble(config.run, dims, config.stochastic.mc_samples,
                                    config.stochastic.seed, workers);
}

int cmd_uq(const CliOptions& opt) {
  std::string bytes;
  const tline::io::ConfigFile config = prepare_config(opt, bytes);
  config.run.validate();
  const std::vector<tline::uq::RandomParam> dims = tline::io::stochastic_dims(config);

  const auto start = std::chrono::steady_clock::now();
  const tline::uq::EnsembleStats stats = run_ensemble(config, dims, opt.workers);
  tline::io::write_uq_bundle(config.output.directory, config, bytes, stats, dims,
                             seconds_since(start));

  std::cout << stats.realizations << " realizations, common horizon "
            << (stats.common_steps > 0 ? stats.time.back() : 0.0) << " yr; results in "
            << config.output.directory << "\n";
  return kExitOk;
}

int cmd_compare(const CliOptions& opt) {
  std::string bytes;
  const tline::io::ConfigFile config = prepare_config(opt, bytes);
  config.run.validate();
  const std::vector<tline::uq::RandomParam> dims = tline::io::stochastic_dims(config);

  const tline::io::BundleStats reference = tline::io::read_uq_bundle(opt.reference_dir);
  const tline::uq::EnsembleStats stats = run_ensemble(config, dims, opt.workers);
  const std::vector<tline::io::CompareRow> rows = tline::io::compare_stats(stats, reference);

  std::printf("%-28s %s\n", "quantity", "epsilon");
  for (const auto& row : rows) {
    std::printf("%-28s %.8e\n", row.quantity.c_str(), row.epsilon);
  }
  if (!opt.out_dir.empty()) tline::io::write_compare_report(opt.out_dir, rows);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D conductor aging simulator with collocation-based UQ"};
  app.require_subcommand(1);

  CliOptions opt;

  CLI::App* run = app.add_subcommand("run", "deterministic simulation from a config file");
  run->add_option("config", opt.config_path, "config file (JSON)")->required();
  run->add_option("--out", opt.out_dir, "output directory (overrides config)");

  CLI::App* uq = app.add_subcommand("uq", "PCM or Monte Carlo ensemble with statistics");
  uq->add_option("config", opt.config_path, "config file (JSON)")->required();
  uq->add_option("--out", opt.out_dir, "output directory (overrides config)");
  uq->add_option("--workers", opt.workers, "parallel realizations (default: hardware)");
  uq->add_option("--seed", opt.seed, "Monte Carlo seed (overrides config)")
      ->each([&](const std::string&) { opt.seed_set = true; });

  CLI::App* compare = app.add_subcommand("compare", "relative error against a reference bundle");
  compare->add_option("config", opt.config_path, "config file (JSON)")->required();
  compare->add_option("--reference", opt.reference_dir, "reference bundle directory")->required();
  compare->add_option("--out", opt.out_dir, "directory for the persisted error table");
  compare->add_option("--workers", opt.workers, "parallel realizations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(opt);
    if (uq->parsed()) return cmd_uq(opt);
    if (compare->parsed()) return cmd_compare(opt);
  } catch (const tline::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const tline::io::io_failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const tline::error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
