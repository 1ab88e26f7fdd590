#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "provtrie/error.hpp"
#include "provtrie/provgraph.hpp"
#include "provtrie/trie.hpp"

namespace provtrie {

enum class Engine { Trie, Naive };

const char* to_string(Engine engine) noexcept;

struct BenchRow {
  std::string dataset;
  Engine engine = Engine::Trie;
  std::size_t wildcards = 0;
  std::uint64_t n_paths = 0;
  std::uint64_t time_ns = 1;  // median over trials, never 0
  std::size_t trials = 1;
};

struct BenchConfig {
  std::string dataset;
  ResourceId start{":r0"};
  ResourceId end{":r1"};
  std::size_t min_wildcards = 1;
  std::size_t max_wildcards = 9;
  std::size_t trials = 7;
  std::size_t warmup = 2;
  // Trie engine only: time q1 (full match lists) instead of count_paths.
  bool materialize = false;
};

// Raised when a query fails mid-run; carries the rows finished so far.
class BenchAborted : public Error {
 public:
  BenchAborted(const std::string& message, std::vector<BenchRow> partial)
      : Error(ErrorCode::InvalidArgument, message), partial_(std::move(partial)) {}
  const std::vector<BenchRow>& partial() const noexcept { return partial_; }

 private:
  std::vector<BenchRow> partial_;
};

// Q1M over the trie for M = min_wildcards..max_wildcards, one row per M.
std::vector<BenchRow> run_bench(const Trie& t, const BenchConfig& config);

// Same protocol against brute-force walk counting on the raw graph.
std::vector<BenchRow> run_naive_bench(const ProvGraph& g, const BenchConfig& config);

std::uint64_t median_ns(std::vector<std::uint64_t> samples);

// Least-squares slope of log10(time_ns) against log10(n_paths), ignoring rows
// with fewer than 10 paths. Throws InsufficientData with < 3 usable rows.
double loglog_slope(std::span<const BenchRow> rows);

inline constexpr const char* kBenchCsvHeader = "dataset,engine,wildcards,n_paths,time_ns,trials";

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out, bool header = true);

}  // namespace provtrie
