#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "shellcap/errors.hpp"
#include "shellcap/experiment.hpp"

using namespace shellcap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("shellcap_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(const std::string& args, const fs::path& out) {
  std::string cmd = std::string(SHELLCAP_CLI) + " " + args + " > " + out.string() + " 2> " + out.string() + ".err";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

const std::string* file(const ReportBundle& b, const std::string& name) {
  for (const auto& [n, body] : b.files)
    if (n == name) return &body;
  return nullptr;
}

}  // namespace

TEST_CASE("config parsing") {
  auto c = parse_config("# grid\nlambda = 64, 128\ndelta_exp = -0.5\nmodules = shell, caps\np = 4,6\n");
  CHECK(c.lambdas == std::vector<double>{64, 128});
  CHECK(c.modules == std::set<std::string>{"shell", "caps"});
  auto cells = experiment_cells(c);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].second == doctest::Approx(0.125));
  CHECK(cells[1].second == doctest::Approx(0.0883883476));
  CHECK_THROWS_WITH_AS(parse_config("colour = red"), "unknown configuration key 'colour'", ConfigError);
  CHECK_THROWS_AS(parse_config("p = 5"), ConfigError);
  CHECK_THROWS_AS(parse_config("modules = shell, pies"), ConfigError);
  auto bad = parse_config("lambda = 1\ndelta = 0.1");
  CHECK_THROWS_WITH_AS(experiment_cells(bad), doctest::Contains("lambda"), ConfigError);
  auto bad2 = parse_config("lambda = 10\ndelta = 1.5");
  CHECK_THROWS_WITH_AS(experiment_cells(bad2), doctest::Contains("delta"), ConfigError);
  ExperimentConfig o;
  apply_override(o, "lambda", "5");
  CHECK(o.lambdas == std::vector<double>{5});
  CHECK(canonical_config(c) == canonical_config(parse_config(canonical_config(c))));
}

TEST_CASE("shell bundle") {
  ExperimentConfig c;
  c.lambdas = {5};
  c.deltas = {0.05};
  auto b = run_experiment(c);
  REQUIRE(b.files.size() == 1);
  CHECK(b.files[0].first == "shell.csv");
  CHECK(b.files[0].second == "lambda,delta,count,ratio\n5,0.050000000000000003,30,24\n");
}

TEST_CASE("schemas") {
  CHECK(shell_csv_header() == "lambda,delta,count,ratio\n");
  CHECK(caps_csv_header() == "lambda,delta,rank,s,count\n");
  CHECK(ratios_csv_header() == "lambda,delta,bound_id,s,observed,bound,ratio\n");
  CHECK(expsum_csv_header() == "lambda,delta,M,x_index,abs_S,ratio_trivial,ratio_guo\n");
  CHECK(region_csv_header() == "p,exponent,piece_id\n");
  CHECK(fmt_real(0.1) == "0.10000000000000001");

  ExperimentConfig c;
  c.lambdas = {16};
  c.delta_exps = {-0.5};
  c.ps = {4, 6};
  c.modules = {"norms", "energy"};
  auto b = run_experiment(c);
  const auto* norms = file(b, "norms.jsonl");
  REQUIRE(norms);
  std::istringstream lines(*norms);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    std::set<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
    CHECK(keys == std::set<std::string>{"lambda", "delta", "p", "ratio", "bound", "regime", "method"});
    ++n;
  }
  CHECK(n == 2);
  auto e = nlohmann::json::parse(*file(b, "energy.jsonl"));
  CHECK(e.contains("E"));
  CHECK(e.contains("Z"));
  CHECK(e.contains("k_star"));
  CHECK(e.contains("bounds"));
  CHECK(e.contains("ratios"));
}

TEST_CASE("emit and rerun") {
  ExperimentConfig c;
  c.lambdas = {12, 20};
  c.delta_exps = {-0.5};
  c.modules = {"shell", "caps", "ratios", "expsum", "region"};
  c.expsum_samples = 2;
  auto dir = scratch("emit");
  auto a = run_experiment(c);
  emit_report(a, dir.string());
  auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["config_hash"] == a.config_hash);
  CHECK(manifest["files"].size() == a.files.size());
  for (const auto& f : manifest["files"]) {
    auto body = slurp(dir / f["name"].get<std::string>());
    CHECK(f["sha256"] == sha256_hex(body));
    CHECK(f["bytes"] == body.size());
  }
  auto b = run_experiment(c);
  CHECK(a.files == b.files);
  CHECK(a.config_hash == b.config_hash);

  auto empty = scratch("empty");
  emit_report(ReportBundle{}, empty.string());
  CHECK(std::distance(fs::directory_iterator(empty), fs::directory_iterator{}) == 1);
  CHECK(fs::exists(empty / "manifest.json"));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("guard errors carry the cell") {
  ExperimentConfig c;
  c.lambdas = {8, 40};
  c.deltas = {0.5};
  c.modules = {"energy"};
  c.energy_r = 3;
  c.energy_full_shell = true;
  CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains("cell 1"), GuardError);
}

TEST_CASE("command line") {
  auto d = scratch("cli");
  CHECK(run("shell --lambda 5 --delta 0.05", d / "a") == 0);
  auto j = nlohmann::json::parse(slurp(d / "a"));
  CHECK(j["count"] == 30);

  CHECK(run("shell --lambda 5 --delta 0.05 --points " + (d / "p.csv").string(), d / "b") == 0);
  auto pts = slurp(d / "p.csv");
  CHECK(pts.rfind("x1,x2,x3\n", 0) == 0);
  CHECK(std::count(pts.begin(), pts.end(), '\n') == 31);

  CHECK(run("caps --lambda 64 --delta-exp -0.5", d / "c") == 0);
  CHECK(slurp(d / "c").rfind("lambda,delta,rank,s,count\n", 0) == 0);
  CHECK(nlohmann::json::parse(slurp(d / "c.err")).contains("max_rho1"));

  CHECK(run("region --p-grid 2:3:0.5", d / "r") == 0);
  CHECK(slurp(d / "r") == "p,exponent,piece_id\n2,-1,1\n2.5,-1,1\n3,-1,1\n");
  CHECK(run("oracle annulus --A 5 --B 5 --eta 0.05", d / "o") == 0);
  CHECK(slurp(d / "o").find(",20,") != std::string::npos);

  std::ofstream(d / "cfg.txt") << "lambda = 5\ndelta = 0.05\nmodules = shell\n";
  CHECK(run("run --config " + (d / "cfg.txt").string() + " --out " + (d / "bundle").string(), d / "run") == 0);
  CHECK(slurp(d / "bundle" / "shell.csv") == "lambda,delta,count,ratio\n5,0.050000000000000003,30,24\n");

  CHECK(run("shell --lambda -3 --delta 0.1", d / "e1") == 2);
  CHECK(run("shell --lambda 5", d / "e2") == 2);
  CHECK(run("frobnicate", d / "e3") == 2);
  CHECK(run("run --set colour=red", d / "e4") == 2);
  CHECK(run("energy --lambda 40 --delta 0.5 --r 3 --full-shell", d / "g") == 3);
  CHECK(slurp(d / "g.err").find("guard") != std::string::npos);
}
