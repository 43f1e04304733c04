// Serial reference implementations against the parallel kernels.
// Usage: shellcap_bench [--scale small|medium] [--threads N]

#include <fmt/format.h>
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <string>

#include "shellcap/reference.hpp"

using namespace shellcap;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, double serial, double parallel, bool same) {
  fmt::print("{:<28} {:>12.4f} {:>12.4f} {:>8.2f}x  {}\n", name, serial, parallel, serial / parallel,
             same ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  bool medium = false;
  int threads = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--scale") && i + 1 < argc) medium = std::string(argv[++i]) == "medium";
    else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) threads = std::atoi(argv[++i]);
  }
  if (threads > 0) omp_set_num_threads(threads);
  const int reps = 3;
  const double lambda = medium ? 96 : 48;
  const double delta = 1 / std::sqrt(lambda);
  const auto Q = identity_form();

  fmt::print("lambda {}, delta {:.4f}, {} threads\n", lambda, delta, omp_get_max_threads());
  fmt::print("{:<28} {:>12} {:>12} {:>9}\n", "kernel", "serial [s]", "parallel [s]", "speedup");

  ShellPointSet a, b;
  double ts = best_of(reps, [&] { a = reference::enumerate_shell(Q, lambda, delta); });
  double tp = best_of(reps, [&] { b = enumerate_shell(Q, lambda, delta); });
  row("enumerate_shell", ts, tp, a.points == b.points);

  auto centers = seed_centers(b);
  std::vector<std::size_t> oa, ob;
  ts = best_of(reps, [&] { oa = reference::assign_points(b, centers); });
  tp = best_of(reps, [&] { ob = assign_points(b, centers); });
  row("assign_points", ts, tp, oa == ob);

  const auto small = enumerate_shell(Q, lambda / 3, 1 / std::sqrt(lambda / 3)).points;
  std::int64_t ea = 0, eb = 0;
  ts = best_of(1, [&] { ea = reference::additive_energy(small, 2); });
  tp = best_of(reps, [&] { eb = additive_energy(small, 2); });
  row(fmt::format("additive_energy r=2 (n={})", small.size()), ts, tp, ea == eb);

  auto f = make_point_quasimode(enumerate_shell(Q, 8, 0.3));
  const int N = default_grid_size(8);
  double na = 0, nb = 0;
  ts = best_of(1, [&] { na = reference::lp_norm_grid(f, 4, N); });
  tp = best_of(reps, [&] { nb = lp_norm_grid(f, 4, N); });
  row(fmt::format("lp_norm_grid p=4 N={}", N), ts, tp, std::fabs(na - nb) <= 1e-9 * na);

  DyadicSumSpec spec{lambda, delta, medium ? 32 : 16, {0.3, 0.4, 0.5}};
  std::complex<double> sa, sb;
  ts = best_of(reps, [&] { sa = reference::dyadic_sum(spec); });
  tp = best_of(reps, [&] { sb = dyadic_sum(spec); });
  row(fmt::format("dyadic_sum M={}", spec.M), ts, tp, sa == sb);
  return 0;
}
