// Serial reference vs OpenMP kernels: wall time and bitwise agreement.
//
//   bench_kernels [N] [threads]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "seqlab/kernels.hpp"
#include "seqlab/rng.hpp"

namespace {

using seqlab::kernels::PrefixSums;
namespace serial = seqlab::kernels::serial;
namespace parallel = seqlab::kernels::parallel;

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void row(const char* name, double ts, double tp, bool equal) {
  std::printf("%-22s %10.4f %10.4f %8.2fx  %s\n", name, ts, tp, ts / tp, equal ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : std::size_t{1} << 22;
  const int threads = argc > 2 ? std::atoi(argv[2]) : 0;
  seqlab::kernels::set_threads(threads);

  std::vector<double> x(n);
  seqlab::rng::Stream rs(2024, 0);
  for (double& v : x) v = rs.uniform(-2.0, 2.0);
  const PrefixSums p = seqlab::kernels::compensated_prefix_sums(x);

  std::printf("N = %zu, threads = %d\n", n, seqlab::kernels::max_threads());
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  bool all_equal = true;
  for (std::size_t w : {std::size_t{16}, std::size_t{4096}, n / 4}) {
    seqlab::kernels::SumExtremes es{}, ep{};
    const double ts = seconds([&] { es = serial::window_sum_extremes(p, w, n); });
    const double tp = seconds([&] { ep = parallel::window_sum_extremes(p, w, n); });
    const bool eq = es.max_sum == ep.max_sum && es.min_sum == ep.min_sum;
    all_equal = all_equal && eq;
    char name[64];
    std::snprintf(name, sizeof name, "window n=%zu", w);
    row(name, ts, tp, eq);
  }

  {
    std::vector<double> a(n), b(n);
    const auto f = [](double v) { return std::exp(v); };
    const double ts = seconds([&] { serial::map_values(x, a, f); });
    const double tp = seconds([&] { parallel::map_values(x, b, f); });
    const bool eq = same_bits(a, b);
    all_equal = all_equal && eq;
    row("map exp", ts, tp, eq);
  }

  {
    const std::size_t rows = 9;
    std::vector<double> m(rows * n);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t i = 0; i < n; ++i) m[r * n + i] = std::exp(0.1 * static_cast<double>(r + 1) * x[i]);
    std::vector<double> gs, gp;
    const double ts = seconds([&] { gs = serial::gram(m, rows, n); });
    const double tp = seconds([&] { gp = parallel::gram(m, rows, n); });
    const bool eq = same_bits(gs, gp);
    all_equal = all_equal && eq;
    row("gram 9 rows", ts, tp, eq);
  }
  return all_equal ? 0 : 1;
}
