#include "provtrie/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>

#include "provtrie/oracle.hpp"
#include "provtrie/query.hpp"

namespace provtrie {

namespace {

using Clock = std::chrono::steady_clock;

void validate(const BenchConfig& config) {
  if (config.max_wildcards < 1 || config.min_wildcards < 1 || config.min_wildcards > config.max_wildcards)
    throw Error(ErrorCode::InvalidArgument, "wildcard range must satisfy 1 <= min <= max");
  if (config.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
}

std::vector<BenchRow> run(const BenchConfig& config, Engine engine,
                          const std::function<std::uint64_t(std::size_t)>& query) {
  validate(config);
  std::vector<BenchRow> rows;
  for (std::size_t m = config.min_wildcards; m <= config.max_wildcards; ++m) {
    try {
      for (std::size_t i = 0; i < config.warmup; ++i) query(m);
      std::vector<std::uint64_t> samples;
      std::uint64_t paths = 0;
      for (std::size_t i = 0; i < config.trials; ++i) {
        const auto t0 = Clock::now();
        const std::uint64_t n = query(m);
        const auto t1 = Clock::now();
        if (i > 0 && n != paths) throw Error(ErrorCode::InvalidArgument, "path count changed between trials");
        paths = n;
        samples.push_back(
            static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
      }
      rows.push_back(BenchRow{config.dataset, engine, m, paths, std::max<std::uint64_t>(1, median_ns(samples)),
                              config.trials});
    } catch (const Error& e) {
      throw BenchAborted("benchmark aborted at M=" + std::to_string(m) + ": " + e.what(), std::move(rows));
    }
  }
  return rows;
}

}  // namespace

const char* to_string(Engine engine) noexcept { return engine == Engine::Trie ? "trie" : "naive"; }

std::vector<BenchRow> run_bench(const Trie& t, const BenchConfig& config) {
  return run(config, Engine::Trie, [&](std::size_t m) -> std::uint64_t {
    QueryPattern p{{config.start}, m, config.end};
    if (config.materialize) return q1(t, p).matches.size();
    return count_paths(t, p);
  });
}

std::vector<BenchRow> run_naive_bench(const ProvGraph& g, const BenchConfig& config) {
  return run(config, Engine::Naive,
             [&](std::size_t m) { return count_walks(g, config.start, config.end, m + 1); });
}

std::uint64_t median_ns(std::vector<std::uint64_t> samples) {
  if (samples.empty()) throw Error(ErrorCode::InsufficientData, "no timing samples");
  const auto mid = samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2);
  std::nth_element(samples.begin(), mid, samples.end());
  if (samples.size() % 2 == 1) return *mid;
  const auto lower = *std::max_element(samples.begin(), mid);
  return lower + (*mid - lower) / 2;
}

double loglog_slope(std::span<const BenchRow> rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows)
    if (r.n_paths >= 10 && r.time_ns > 0)
      pts.emplace_back(std::log10(static_cast<double>(r.n_paths)), std::log10(static_cast<double>(r.time_ns)));
  if (pts.size() < 3)
    throw Error(ErrorCode::InsufficientData, "need at least 3 rows with n_paths >= 10, have " +
                                                 std::to_string(pts.size()));
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0) throw Error(ErrorCode::InsufficientData, "all rows have the same path count");
  return sxy / sxx;
}

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out, bool header) {
  if (header) out << kBenchCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.dataset << ',' << to_string(r.engine) << ',' << r.wildcards << ',' << r.n_paths << ',' << r.time_ns
        << ',' << r.trials << '\n';
}

}  // namespace provtrie
