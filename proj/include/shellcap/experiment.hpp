#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shellcap/caps.hpp"
#include "shellcap/energy.hpp"
#include "shellcap/expsum.hpp"
#include "shellcap/norms.hpp"
#include "shellcap/oracles.hpp"

namespace shellcap {

struct ExperimentConfig {
  std::string form = "identity";  // or nine matrix entries
  std::vector<double> lambdas;
  std::vector<double> deltas;      // absolute values
  std::vector<double> delta_exps;  // delta = lambda^e
  std::vector<int> ps{4};          // norms: even exponents
  std::vector<double> region_ps;   // region table; default grid when empty
  std::set<std::string> modules{"shell"};
  std::string out_dir = "out";
  int energy_r = 2;
  bool energy_full_shell = false;
  std::size_t expsum_samples = 16;
  int threads = 0;  // 0: OpenMP default
};

/// key = value lines; '#' starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Canonical text form; hashed into the manifest.
std::string canonical_config(const ExperimentConfig& cfg);

/// (lambda, delta) cells in grid order, validated.
std::vector<std::pair<double, double>> experiment_cells(const ExperimentConfig& cfg);

QuadraticForm config_form(const ExperimentConfig& cfg);

struct ReportBundle {
  std::vector<std::pair<std::string, std::string>> files;  // name -> body, emission order
  std::string config_hash;
  std::string tool_version = "0.1.0";
};

ReportBundle run_experiment(const ExperimentConfig& cfg);

/// Writes every artifact plus manifest.json. Returns the manifest text.
std::string emit_report(const ReportBundle& bundle, const std::string& dir);

std::string sha256_hex(const std::string& data);

// CSV/JSONL bodies shared by the command line and the pipeline.
std::string fmt_real(double v);  // 17 significant digits
std::string shell_csv_header();
std::string caps_csv_header();
std::string ratios_csv_header();
std::string expsum_csv_header();
std::string region_csv_header();

std::vector<double> default_region_grid();
std::string region_rows(const std::vector<double>& ps);
std::string shell_row(const ShellPointSet& shell);
std::string caps_rows(const CapCensus& c);
std::string ratios_rows(const CapCensus& c);
std::string energy_json(const EnergyReport& r);
std::string norms_json(const NormEstimate& e);
std::string expsum_rows(const std::vector<ExpsumRow>& rows);
std::string caps_summary_json(const CapCensus& c, const Rank2Ratios& r);

}  // namespace shellcap
