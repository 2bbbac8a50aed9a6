#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "diskop/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"diskop: weighted operator experiments on the unit circle and disk"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value lines overriding flag defaults");

  // Shared flags live on the root; subcommands fall through to them, so both
  // `diskop <cmd> --grid-n 512` and plain config keys work.
  diskop::ExperimentConfig cfg;
  std::string out;
  std::string format = "csv";
  app.add_option("--grid-n", cfg.grid_n, "circle grid size (power of two)");
  app.add_option("--depth", cfg.depth, "radial dyadic depth");
  app.add_option("--modes", cfg.modes, "coefficient truncation");
  app.add_option("--seed", cfg.seed, "RNG seed (recorded in output)");
  app.add_option("--out", out, "output path (default: stdout)");
  app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* hardy = app.add_subcommand("hardy-sharpness", "sqrt(p') and Riesz witness branches");

  auto* weighted =
      app.add_subcommand("weighted-sharpness", "omega_delta sweep: A_p slope and Q ratio");
  double weighted_p = 2.0;
  weighted->add_option("--p", weighted_p, "Lebesgue exponent");
  std::vector<double> weighted_deltas{0.4, 0.2, 0.1, 0.05, 0.025};
  weighted->add_option("--deltas", weighted_deltas, "delta sweep values");

  auto* dyadic = app.add_subcommand("dyadic-suite", "dyadic system / sparse family batches");
  int dyadic_n = 256, dyadic_kmax = 5, dyadic_trials = 20;
  dyadic->add_option("--n", dyadic_n, "grid size for the suite");
  dyadic->add_option("--k-max", dyadic_kmax, "finest generation");
  dyadic->add_option("--trials", dyadic_trials, "random trials");

  auto* buckley = app.add_subcommand("buckley-a2", "Buckley envelope and lifted A2 constant");

  auto* riesz = app.add_subcommand("riesz-constant", "Riesz projection witness ratios");

  auto* oracle = app.add_subcommand("oracle-diff", "Fourier path vs kernel quadrature");
  int oracle_points = 20, oracle_inputs = 10;
  oracle->add_option("--points", oracle_points, "interior evaluation points per input");
  oracle->add_option("--inputs", oracle_inputs, "random inputs");

  auto* ap = app.add_subcommand("ap-const", "A_p constant of a weight");
  double ap_p = 2.0;
  std::string ap_weight_file;
  double ap_power = 0.0, ap_delta = 0.0;
  bool has_power = false, has_delta = false;
  ap->add_option("--p", ap_p, "exponent p > 1");
  ap->add_option("--weight-file", ap_weight_file, "weight CSV path");
  ap->add_option("--power", ap_power, "power weight exponent")->each([&](std::string) {
    has_power = true;
  });
  ap->add_option("--delta", ap_delta, "omega_delta parameter")->each([&](std::string) {
    has_delta = true;
  });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  auto emit = [&](const diskop::ExperimentReport& rep) {
    if (!out.empty()) {
      diskop::save_report(rep, out, format);
    } else if (format == "json") {
      diskop::write_report_json(rep, std::cout);
    } else {
      diskop::write_report_csv(rep, std::cout);
    }
    return rep.exit_code;
  };

  try {
    if (*hardy) return emit(diskop::run_hardy_sharpness(cfg));
    if (*weighted) return emit(diskop::run_weighted_sharpness(cfg, weighted_p, weighted_deltas));
    if (*dyadic) return emit(diskop::run_dyadic_suite(cfg, dyadic_n, dyadic_kmax, dyadic_trials));
    if (*buckley) return emit(diskop::run_buckley_a2(cfg));
    if (*riesz) return emit(diskop::run_riesz(cfg));
    if (*oracle) return emit(diskop::run_oracle_diff(cfg, oracle_points, oracle_inputs));
    if (*ap) {
      std::optional<std::string> file;
      if (!ap_weight_file.empty()) file = ap_weight_file;
      std::optional<double> power, delta;
      if (has_power) power = ap_power;
      if (has_delta) delta = ap_delta;
      return emit(diskop::run_ap_const(cfg, ap_p, file, power, delta));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
