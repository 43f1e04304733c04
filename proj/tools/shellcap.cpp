// shellcap command line: one subcommand per module plus the full pipeline.

#include <fmt/format.h>
#include <omp.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "shellcap/errors.hpp"
#include "shellcap/experiment.hpp"

using namespace shellcap;

namespace {

struct Common {
  double lambda = 0;
  std::optional<double> delta;
  std::optional<double> delta_exp;
  std::string form;
  int threads = 0;

  double resolved_delta() const {
    if (delta && delta_exp) throw ConfigError("delta: give --delta or --delta-exp, not both");
    if (delta) return *delta;
    if (delta_exp) return std::pow(lambda, *delta_exp);
    throw ConfigError("delta: --delta or --delta-exp is required");
  }
  QuadraticForm resolved_form() const {
    if (form.empty() || form == "identity") return identity_form();
    std::ifstream f(form);
    if (!f) throw ConfigError("form: cannot read '" + form + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      return parse_form(ss.str());
    } catch (const DomainError& e) {
      throw ConfigError(std::string("form: ") + e.what());
    }
  }
};

void add_common(CLI::App* app, Common& c, bool need_lambda = true) {
  auto* l = app->add_option("--lambda", c.lambda, "frequency scale");
  if (need_lambda) l->required();
  app->add_option("--delta", c.delta, "shell half-width");
  app->add_option("--delta-exp", c.delta_exp, "delta = lambda^e");
  app->add_option("--form", c.form, "file with nine matrix entries (default identity)");
  app->add_option("--threads", c.threads, "OpenMP threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice points in thin shells on the 3-torus"};
  app.require_subcommand(1);

  Common shell_o;
  std::string points_out;
  auto* shell_cmd = app.add_subcommand("shell", "enumerate the shell, print its census");
  add_common(shell_cmd, shell_o);
  shell_cmd->add_option("--points", points_out, "write points as CSV");

  Common caps_o;
  auto* caps_cmd = app.add_subcommand("caps", "cap histogram as CSV; summary JSON on stderr");
  add_common(caps_cmd, caps_o);

  auto* oracle_cmd = app.add_subcommand("oracle", "counting oracles");
  oracle_cmd->require_subcommand(1);
  std::string curve = "parabola";
  double cx = 1, cy = 1, cdelta = 0;
  int ck = 0;
  auto* curve_cmd = oracle_cmd->add_subcommand("curve", "points near Y G(x/X)");
  curve_cmd->add_option("--curve", curve, "circle|parabola|hyperbola|linear");
  curve_cmd->add_option("--X", cx)->required();
  curve_cmd->add_option("--Y", cy)->required();
  curve_cmd->add_option("--delta", cdelta);
  curve_cmd->add_option("--k", ck, "also evaluate the Fejer majorant");
  BinaryForm bq;
  double aa = 1, bb = 1, eta = 0.1;
  auto* ann_cmd = oracle_cmd->add_subcommand("annulus", "points with |q(a/A,b/B)-1| < eta");
  ann_cmd->add_option("--q1", bq.q1);
  ann_cmd->add_option("--q2", bq.q2);
  ann_cmd->add_option("--q3", bq.q3);
  ann_cmd->add_option("--A", aa)->required();
  ann_cmd->add_option("--B", bb)->required();
  ann_cmd->add_option("--eta", eta)->required();
  Common ratio_o;
  std::string bound_id;
  auto* ratios_cmd = oracle_cmd->add_subcommand("ratios", "cap counts against the stated bounds");
  add_common(ratios_cmd, ratio_o);
  ratios_cmd->add_option("--bound", bound_id, "restrict to one bound id");

  Common energy_o;
  int energy_r = 2;
  bool full_shell = false;
  auto* energy_cmd = app.add_subcommand("energy", "additive energy and representation maximum");
  add_common(energy_cmd, energy_o);
  energy_cmd->add_option("--r", energy_r, "fold count, p = 2r");
  energy_cmd->add_flag("--full-shell", full_shell, "use the whole shell instead of the upper corona");

  Common norms_o;
  std::vector<int> norm_ps{4};
  std::string quasimode = "point";
  auto* norms_cmd = app.add_subcommand("norms", "quasimode L^p ratios");
  add_common(norms_cmd, norms_o);
  norms_cmd->add_option("--p", norm_ps, "even exponents");
  norms_cmd->add_option("--quasimode", quasimode, "point|caps")->check(CLI::IsMember({"point", "caps"}));

  std::string p_grid;
  auto* region_cmd = app.add_subcommand("region", "proven-region exponent table");
  region_cmd->add_option("--p-grid", p_grid, "comma list, or lo:hi:step");

  Common exp_o;
  std::size_t samples = 64;
  auto* exp_cmd = app.add_subcommand("expsum", "dyadic exponential sums against their bounds");
  add_common(exp_cmd, exp_o);
  exp_cmd->add_option("--samples", samples);

  std::string config_path, out_dir;
  std::vector<std::string> sets;
  double run_lambda = 0;
  std::optional<double> run_delta, run_delta_exp;
  std::optional<int> run_threads;
  std::vector<int> run_ps;
  std::string run_form;
  auto* run_cmd = app.add_subcommand("run", "full pipeline from a config file");
  run_cmd->add_option("--config", config_path, "key = value file");
  run_cmd->add_option("--set", sets, "key=value override");
  run_cmd->add_option("--lambda", run_lambda);
  run_cmd->add_option("--delta", run_delta);
  run_cmd->add_option("--delta-exp", run_delta_exp);
  run_cmd->add_option("--p", run_ps);
  run_cmd->add_option("--form", run_form);
  run_cmd->add_option("--out", out_dir);
  run_cmd->add_option("--threads", run_threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto set_threads = [](int t) {
      if (t > 0) omp_set_num_threads(t);
    };
    if (*shell_cmd) {
      set_threads(shell_o.threads);
      auto s = enumerate_shell(shell_o.resolved_form(), shell_o.lambda, shell_o.resolved_delta());
      auto c = shell_census(s);
      fmt::print("{{\"lambda\":{},\"delta\":{},\"count\":{},\"volume_proxy\":{},\"ratio\":{},\"guard_band_hits\":{}}}\n",
                 fmt_real(s.lambda), fmt_real(s.delta), c.count, fmt_real(c.volume_proxy), fmt_real(c.ratio),
                 s.guard_band_hits);
      if (!points_out.empty()) {
        std::ofstream f(points_out);
        if (!f) throw ConfigError("points: cannot write '" + points_out + "'");
        f << "x1,x2,x3\n";
        for (const auto& p : s.points) f << p[0] << ',' << p[1] << ',' << p[2] << '\n';
      }
    } else if (*caps_cmd) {
      set_threads(caps_o.threads);
      auto s = enumerate_shell(caps_o.resolved_form(), caps_o.lambda, caps_o.resolved_delta());
      auto cover = build_classified_cover(s);
      auto c = census(cover, s.lambda, s.delta);
      fmt::print("{}{}", caps_csv_header(), caps_rows(c));
      std::cerr << caps_summary_json(c, rank2_invariant_ratios(cover, s.lambda, s.delta));
    } else if (*oracle_cmd) {
      if (*curve_cmd) {
        CurveSpec spec{parse_curve(curve), cx, cy, cdelta};
        auto n = count_near_curve(spec);
        fmt::print("curve,X,Y,delta,count,k,majorant\n{},{},{},{},{},", curve, fmt_real(cx), fmt_real(cy),
                   fmt_real(cdelta), n);
        if (ck > 0)
          fmt::print("{},{}\n", ck, fmt_real(fejer_majorant(spec, ck)));
        else
          fmt::print(",\n");
      } else if (*ann_cmd) {
        auto r = annulus_report(bq, aa, bb, eta);
        fmt::print("q1,q2,q3,A,B,eta,count,bound_third,bound_huxley,huxley_window,lemma_window\n");
        fmt::print("{},{},{},{},{},{},{},{},{},{},{}\n", fmt_real(bq.q1), fmt_real(bq.q2), fmt_real(bq.q3),
                   fmt_real(aa), fmt_real(bb), fmt_real(eta), r.count, fmt_real(r.bound_third),
                   fmt_real(r.bound_huxley), r.huxley_window ? 1 : 0, r.lemma_window ? 1 : 0);
      } else {
        set_threads(ratio_o.threads);
        if (!bound_id.empty()) parse_bound(bound_id);
        auto s = enumerate_shell(ratio_o.resolved_form(), ratio_o.lambda, ratio_o.resolved_delta());
        auto c = census(build_classified_cover(s), s.lambda, s.delta);
        fmt::print("{}", ratios_csv_header());
        for (auto id : all_bounds()) {
          if (!bound_id.empty() && bound_name(id) != bound_id) continue;
          auto rep = bound_ratio_report(c, id);
          for (const auto& r : rep.rows)
            fmt::print("{},{},{},{},{},{},{}\n", fmt_real(c.lambda), fmt_real(c.delta), bound_name(id), r.s,
                       fmt_real(r.observed), fmt_real(r.bound), fmt_real(r.ratio));
        }
      }
    } else if (*energy_cmd) {
      set_threads(energy_o.threads);
      fmt::print("{}", energy_json(energy_conjecture_report(energy_o.lambda, energy_o.resolved_delta(), energy_r,
                                                            full_shell)));
    } else if (*norms_cmd) {
      set_threads(norms_o.threads);
      for (int p : norm_ps)
        if (p < 2 || p % 2) throw ConfigError("p: norm exponents must be even integers >= 2");
      auto s = enumerate_shell(norms_o.resolved_form(), norms_o.lambda, norms_o.resolved_delta());
      if (quasimode == "point") {
        auto f = make_point_quasimode(s);
        for (int p : norm_ps) fmt::print("{}", norms_json(estimate_ratio(f, s.lambda, s.delta, p)));
      } else {
        auto cover = build_classified_cover(s);
        for (const auto& w : quasimode_witnesses(s, cover, norm_ps)) {
          NormEstimate e = w.best_cap;
          e.lambda = s.lambda;
          e.delta = s.delta;
          e.p = w.p;
          fmt::print("{}", norms_json(e));
        }
      }
    } else if (*region_cmd) {
      std::vector<double> ps;
      if (p_grid.empty()) {
        ps = default_region_grid();
      } else if (std::count(p_grid.begin(), p_grid.end(), ':') == 2) {
        auto a = p_grid.find(':'), b = p_grid.rfind(':');
        double lo = 0, hi = 0, step = 0;
        try {
          lo = std::stod(p_grid.substr(0, a));
          hi = std::stod(p_grid.substr(a + 1, b - a - 1));
          step = std::stod(p_grid.substr(b + 1));
        } catch (const std::exception&) {
          throw ConfigError("p-grid: expected lo:hi:step, got '" + p_grid + "'");
        }
        if (!(step > 0) || !(lo >= 2) || !(hi >= lo)) throw ConfigError("p-grid: need 2 <= lo <= hi and step > 0");
        for (long i = 0; lo + i * step <= hi + 1e-12; ++i) ps.push_back(lo + i * step);
      } else {
        ExperimentConfig tmp;
        apply_override(tmp, "region_p", p_grid);
        ps = tmp.region_ps;
      }
      fmt::print("{}{}", region_csv_header(), region_rows(ps));
    } else if (*exp_cmd) {
      set_threads(exp_o.threads);
      auto rows = expsum_bound_report(exp_o.lambda, exp_o.resolved_delta(), kronecker_samples(samples));
      fmt::print("{}{}", expsum_csv_header(), expsum_rows(rows));
    } else if (*run_cmd) {
      ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
      if (run_lambda > 0) cfg.lambdas = {run_lambda};
      if (run_delta) cfg.deltas = {*run_delta}, cfg.delta_exps.clear();
      if (run_delta_exp) cfg.delta_exps = {*run_delta_exp}, cfg.deltas.clear();
      if (!run_ps.empty()) {
        std::string v;
        for (int p : run_ps) v += std::to_string(p) + ",";
        apply_override(cfg, "p", v);
      }
      if (!run_form.empty()) {
        std::ifstream f(run_form);
        if (!f) throw ConfigError("form: cannot read '" + run_form + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        cfg.form = ss.str();
      }
      for (const auto& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("set: expected key=value, got '" + kv + "'");
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (run_threads) cfg.threads = *run_threads;
      auto bundle = run_experiment(cfg);
      emit_report(bundle, cfg.out_dir);
      for (const auto& [name, body] : bundle.files) fmt::print("{} {}\n", sha256_hex(body), name);
    }
  } catch (const GuardError& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
