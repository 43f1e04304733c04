#include <algorithm>
#include <fmt/format.h>
#include <openssl/evp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <chrono>

#include "json.hpp"

#include "shellcap/errors.hpp"
#include "shellcap/experiment.hpp"

namespace shellcap {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
  return out;
}

std::string fmt_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

std::string shell_csv_header() { return "lambda,delta,count,ratio\n"; }
std::string caps_csv_header() { return "lambda,delta,rank,s,count\n"; }
std::string ratios_csv_header() { return "lambda,delta,bound_id,s,observed,bound,ratio\n"; }
std::string expsum_csv_header() { return "lambda,delta,M,x_index,abs_S,ratio_trivial,ratio_guo\n"; }
std::string region_csv_header() { return "p,exponent,piece_id\n"; }

std::vector<double> default_region_grid() {
  std::vector<double> ps;
  for (int i = 16; i <= 64 * 8; ++i) ps.push_back(i / 8.0);
  for (double p : {235.0 / 52.0, 389.0 / 79.0, 100.0, 1000.0}) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  ps.push_back(INFINITY);
  return ps;
}

std::string region_rows(const std::vector<double>& ps) {
  std::string out;
  for (double p : ps) {
    auto v = proven_region_threshold(p);
    out += fmt::format("{},{},{}\n", fmt_real(p), fmt_real(v.exponent), v.piece);
  }
  return out;
}

std::string shell_row(const ShellPointSet& shell) {
  auto c = shell_census(shell);
  return fmt::format("{},{},{},{}\n", fmt_real(shell.lambda), fmt_real(shell.delta), c.count, fmt_real(c.ratio));
}

std::string caps_rows(const CapCensus& c) {
  std::string out;
  for (const auto& [key, count] : c.bins)
    out += fmt::format("{},{},{},{},{}\n", fmt_real(c.lambda), fmt_real(c.delta), key.first, key.second, count);
  return out;
}

std::string ratios_rows(const CapCensus& c) {
  std::string out;
  for (auto id : all_bounds()) {
    auto rep = bound_ratio_report(c, id);
    for (const auto& r : rep.rows)
      out += fmt::format("{},{},{},{},{},{},{}\n", fmt_real(c.lambda), fmt_real(c.delta), bound_name(id), r.s,
                         fmt_real(r.observed), fmt_real(r.bound), fmt_real(r.ratio));
  }
  return out;
}

static std::string vec_json(const IntVec3& k) { return fmt::format("[{},{},{}]", k[0], k[1], k[2]); }

std::string energy_json(const EnergyReport& r) {
  return fmt::format(
      "{{\"lambda\":{},\"delta\":{},\"r\":{},\"p\":{},\"set\":\"{}\",\"set_size\":{},\"E\":{},\"Z\":{},"
      "\"k_star\":{},\"bounds\":{{\"E_point\":{},\"E_cap\":{},\"E\":{},\"Z\":{}}},"
      "\"ratios\":{{\"E\":{},\"Z\":{}}}}}\n",
      fmt_real(r.lambda), fmt_real(r.delta), r.r, r.p, r.full_shell ? "shell" : "upper", r.set_size, r.E, r.Z,
      vec_json(r.k_star), fmt_real(r.bound_E_point), fmt_real(r.bound_E_cap), fmt_real(r.bound_E),
      fmt_real(r.bound_Z), fmt_real(r.ratio_E), fmt_real(r.ratio_Z));
}

std::string norms_json(const NormEstimate& e) {
  return fmt::format(
      "{{\"lambda\":{},\"delta\":{},\"p\":{},\"ratio\":{},\"bound\":{},\"regime\":\"{}\",\"method\":\"{}\"}}\n",
      fmt_real(e.lambda), fmt_real(e.delta), fmt_real(e.p), fmt_real(e.ratio), fmt_real(e.bound),
      regime_name(e.regime), e.method);
}

std::string expsum_rows(const std::vector<ExpsumRow>& rows) {
  std::string out;
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{},{},{}\n", fmt_real(r.lambda), fmt_real(r.delta), r.M, r.x_index,
                       fmt_real(r.abs_S), fmt_real(r.ratio_trivial), r.in_window ? fmt_real(r.ratio_guo) : "");
  return out;
}

std::string caps_summary_json(const CapCensus& c, const Rank2Ratios& r) {
  return fmt::format(
      "{{\"lambda\":{},\"delta\":{},\"caps\":{},\"points\":{},\"rank2_caps\":{},\"max_rho1\":{},\"max_rho2\":{}}}\n",
      fmt_real(c.lambda), fmt_real(c.delta), c.caps, c.points, r.rho1.size(), fmt_real(r.max_rho1),
      fmt_real(r.max_rho2));
}

std::string emit_report(const ReportBundle& bundle, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("out: cannot create directory '" + dir + "': " + ec.message());
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& [name, body] : bundle.files) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f) throw ConfigError("out: cannot write '" + name + "' in '" + dir + "'");
    f << body;
    files.push_back({{"name", name}, {"sha256", sha256_hex(body)}, {"bytes", body.size()}});
  }
  auto now = std::chrono::system_clock::now();
  nlohmann::ordered_json m;
  m["tool"] = "shellcap";
  m["version"] = bundle.tool_version;
  m["config_hash"] = bundle.config_hash;
  m["created_unix"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  m["files"] = files;
  std::string text = m.dump(2) + "\n";
  std::ofstream f(fs::path(dir) / "manifest.json", std::ios::binary);
  if (!f) throw ConfigError("out: cannot write manifest in '" + dir + "'");
  f << text;
  return text;
}

}  // namespace shellcap
