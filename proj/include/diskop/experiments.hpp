#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "diskop/regression.hpp"

namespace diskop {

struct ExperimentConfig {
  int grid_n = 4096;
  int depth = 14;
  int modes = 2048;
  unsigned long long seed = 1;
};

/// Machine-readable experiment output. Exit codes: 0 all checks passed,
/// 2 an exact property failed, 3 a tolerance/regression check failed.
struct ExperimentReport {
  std::string id;
  std::map<std::string, double> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  struct NamedFit {
    std::string name;
    FitResult fit;
  };
  std::vector<NamedFit> fits;
  std::vector<std::string> notes;
  bool pass = true;
  int exit_code = 0;

  void add_row(std::vector<double> row) { rows.push_back(std::move(row)); }
  void fail_exact(const std::string& note);
  void fail_tolerance(const std::string& note);
  void note(const std::string& text) { notes.push_back(text); }
};

void write_report_csv(const ExperimentReport& rep, std::ostream& out);
void write_report_json(const ExperimentReport& rep, std::ostream& out);
void save_report(const ExperimentReport& rep, const std::string& path,
                 const std::string& format);

/// Unweighted sharpness ingredients: the sqrt(p') witness branch of the
/// extremal family (deep Triebel-Lizorkin evaluation) and the Riesz/Cauchy
/// growth branch for small p.
ExperimentReport run_hardy_sharpness(const ExperimentConfig& cfg,
                                     const std::vector<double>& pprime_list = {4, 8, 16, 32},
                                     const std::vector<double>& p_small = {1.1, 1.2, 1.35,
                                                                           1.5});

/// The omega_delta sweep at fixed p: A_p slope, phi_delta norms, and the
/// Q-operator ratio against [omega]_{A_p}.
ExperimentReport run_weighted_sharpness(const ExperimentConfig& cfg, double p = 2.0,
                                        const std::vector<double>& deltas = {0.4, 0.2, 0.1,
                                                                             0.05, 0.025},
                                        double rho = 0.25);

/// Dyadic system axioms, sparse-family bounds, Whitney cover properties.
ExperimentReport run_dyadic_suite(const ExperimentConfig& cfg, int n = 256, int k_max = 5,
                                  int trials = 20);

/// Buckley maximal-operator envelope and the lifted A_2(B') constant.
ExperimentReport run_buckley_a2(const ExperimentConfig& cfg,
                                const std::vector<double>& p_list = {2.0, 3.0},
                                const std::vector<double>& deltas = {0.4, 0.2, 0.1});

/// Riesz projection witness ratios against 1/sin(pi/p).
ExperimentReport run_riesz(const ExperimentConfig& cfg,
                           const std::vector<double>& p_list = {2.0, 1.5, 1.25});

/// Fourier-path operators vs direct kernel quadrature; rows are per-point
/// diagnostics (point, fourier_value, quadrature_value, abs_err).
ExperimentReport run_oracle_diff(const ExperimentConfig& cfg, int npoints = 20,
                                 int ninputs = 10);

/// A_p constant of a weight given as CSV file, power exponent, or the
/// omega_delta family member.
ExperimentReport run_ap_const(const ExperimentConfig& cfg, double p,
                              const std::optional<std::string>& weight_csv,
                              const std::optional<double>& power_exponent,
                              const std::optional<double>& delta);

}  // namespace diskop
