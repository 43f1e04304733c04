#include "shellcap/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "shellcap/errors.hpp"

namespace shellcap {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_real(const std::string& key, const std::string& tok) {
  if (tok == "inf") return INFINITY;
  try {
    std::size_t used = 0;
    double v;
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
      v = std::stod(tok.substr(0, slash)) / std::stod(tok.substr(slash + 1));
      used = tok.size();
    } else {
      v = std::stod(tok, &used);
    }
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse number '" + tok + "'");
  }
}

std::vector<double> parse_reals(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& t : split_list(v)) out.push_back(parse_real(key, t));
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  double d = parse_real(key, trim(v));
  if (d != std::floor(d) || std::fabs(d) > 1e9) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return static_cast<int>(d);
}

const std::set<std::string> kModules{"shell", "caps", "ratios", "energy", "norms", "expsum", "region"};

}  // namespace

void apply_override(ExperimentConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), value = trim(value_in);
  if (key == "form") {
    cfg.form = value;
  } else if (key == "lambda") {
    cfg.lambdas = parse_reals(key, value);
  } else if (key == "delta") {
    cfg.deltas = parse_reals(key, value);
  } else if (key == "delta_exp") {
    cfg.delta_exps = parse_reals(key, value);
  } else if (key == "p") {
    cfg.ps.clear();
    for (double p : parse_reals(key, value)) {
      if (p != std::floor(p) || p < 2 || static_cast<int>(p) % 2 != 0)
        throw ConfigError("p: norm exponents must be even integers >= 2");
      cfg.ps.push_back(static_cast<int>(p));
    }
  } else if (key == "region_p") {
    cfg.region_ps = parse_reals(key, value);
    for (double p : cfg.region_ps)
      if (!(p >= 2)) throw ConfigError("region_p: values must be at least 2");
  } else if (key == "modules") {
    cfg.modules.clear();
    for (const auto& m : split_list(value)) {
      if (!kModules.count(m)) throw ConfigError("modules: unknown module '" + m + "'");
      cfg.modules.insert(m);
    }
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "energy_r") {
    cfg.energy_r = parse_int(key, value);
    if (cfg.energy_r < 2) throw ConfigError("energy_r: must be at least 2");
  } else if (key == "energy_full_shell") {
    if (value != "true" && value != "false") throw ConfigError("energy_full_shell: expected true or false");
    cfg.energy_full_shell = value == "true";
  } else if (key == "samples") {
    int n = parse_int(key, value);
    if (n < 1) throw ConfigError("samples: must be positive");
    cfg.expsum_samples = static_cast<std::size_t>(n);
  } else if (key == "threads") {
    cfg.threads = parse_int(key, value);
    if (cfg.threads < 0) throw ConfigError("threads: must be nonnegative");
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    apply_override(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const ExperimentConfig& c) {
  std::string s = "form=" + c.form + "\nlambda=";
  for (double v : c.lambdas) s += fmt_real(v) + ",";
  s += "\ndelta=";
  for (double v : c.deltas) s += fmt_real(v) + ",";
  s += "\ndelta_exp=";
  for (double v : c.delta_exps) s += fmt_real(v) + ",";
  s += "\np=";
  for (int v : c.ps) s += std::to_string(v) + ",";
  s += "\nregion_p=";
  for (double v : c.region_ps) s += fmt_real(v) + ",";
  s += "\nmodules=";
  for (const auto& m : c.modules) s += m + ",";
  s += "\nenergy_r=" + std::to_string(c.energy_r) + "\nenergy_full_shell=" + (c.energy_full_shell ? "true" : "false");
  s += "\nsamples=" + std::to_string(c.expsum_samples) + "\n";
  return s;
}

std::vector<std::pair<double, double>> experiment_cells(const ExperimentConfig& cfg) {
  std::vector<std::pair<double, double>> cells;
  for (double lam : cfg.lambdas) {
    if (!(lam > 1) || !std::isfinite(lam)) throw ConfigError("lambda: value " + fmt_real(lam) + " must exceed 1");
    std::vector<double> ds = cfg.deltas;
    for (double e : cfg.delta_exps) ds.push_back(std::pow(lam, e));
    for (double d : ds) {
      if (!(d > 0 && d < 1))
        throw ConfigError("delta: value " + fmt_real(d) + " at lambda " + fmt_real(lam) + " must lie in (0,1)");
      cells.emplace_back(lam, d);
    }
  }
  return cells;
}

QuadraticForm config_form(const ExperimentConfig& cfg) {
  if (cfg.form == "identity") return identity_form();
  try {
    return parse_form(cfg.form);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("form: ") + e.what());
  }
}

ReportBundle run_experiment(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  const QuadraticForm Q = config_form(cfg);
  const auto cells = experiment_cells(cfg);
  const bool identity = Q.is_identity();
  auto on = [&](const char* m) { return cfg.modules.count(m) > 0; };
  if ((on("energy") || on("expsum")) && !identity)
    throw ConfigError("modules: energy and expsum need the identity form");

  std::string shell_csv = shell_csv_header(), caps_csv = caps_csv_header(), ratios_csv = ratios_csv_header();
  std::string energy, norms, expsum = expsum_csv_header();
  const auto samples = kronecker_samples(cfg.expsum_samples);

  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto [lam, del] = cells[i];
    try {
      const bool need_shell = on("shell") || on("caps") || on("ratios") || on("norms");
      ShellPointSet shell;
      if (need_shell) shell = enumerate_shell(Q, lam, del);
      if (on("shell")) shell_csv += shell_row(shell);
      if (on("caps") || on("ratios") || on("norms")) {
        auto cover = build_classified_cover(shell);
        if (on("caps") || on("ratios")) {
          auto c = census(cover, lam, del);
          if (on("caps")) caps_csv += caps_rows(c);
          if (on("ratios")) ratios_csv += ratios_rows(c);
        }
        if (on("norms") && !shell.points.empty()) {
          for (const auto& w : quasimode_witnesses(shell, cover, cfg.ps)) {
            NormEstimate best = w.winner == QuasimodeKind::Point ? w.point : w.best_cap;
            best.lambda = lam;
            best.delta = del;
            best.p = w.p;
            best.bound = w.bound;
            best.regime = w.regime;
            norms += norms_json(best);
          }
        }
      }
      if (on("energy")) energy += energy_json(energy_conjecture_report(lam, del, cfg.energy_r, cfg.energy_full_shell));
      if (on("expsum")) expsum += expsum_rows(expsum_bound_report(lam, del, samples));
    } catch (const GuardError& e) {
      throw GuardError("cell " + std::to_string(i) + " (lambda=" + fmt_real(lam) + ", delta=" + fmt_real(del) +
                       "): " + e.what());
    } catch (const DomainError& e) {
      throw ConfigError("cell " + std::to_string(i) + " (lambda=" + fmt_real(lam) + ", delta=" + fmt_real(del) +
                        "): " + e.what());
    }
  }

  ReportBundle b;
  b.config_hash = sha256_hex(canonical_config(cfg));
  if (on("shell")) b.files.emplace_back("shell.csv", shell_csv);
  if (on("caps")) b.files.emplace_back("caps.csv", caps_csv);
  if (on("ratios")) b.files.emplace_back("ratios.csv", ratios_csv);
  if (on("energy")) b.files.emplace_back("energy.jsonl", energy);
  if (on("norms")) b.files.emplace_back("norms.jsonl", norms);
  if (on("expsum")) b.files.emplace_back("expsum.csv", expsum);
  if (on("region")) {
    auto ps = cfg.region_ps.empty() ? default_region_grid() : cfg.region_ps;
    b.files.emplace_back("region.csv", region_csv_header() + region_rows(ps));
  }
  return b;
}

}  // namespace shellcap
