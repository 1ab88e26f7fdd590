#include "provtrie/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "provtrie/bench.hpp"
#include "provtrie/canonicalize.hpp"
#include "provtrie/error.hpp"
#include "provtrie/ingest.hpp"
#include "provtrie/oracle.hpp"
#include "provtrie/query.hpp"
#include "provtrie/trie.hpp"

namespace provtrie {

namespace {

namespace fs = std::filesystem;

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

Sequence split_uris(const std::string& text) {
  Sequence out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.emplace_back(item);
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "expected at least one URI");
  return out;
}

std::string join(const Sequence& seq) {
  std::string out;
  for (const auto& id : seq) {
    if (!out.empty()) out += ',';
    out += id.str();
  }
  return out;
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

template <class Fn>
auto with_input(const std::string& path, Streams& io, Fn&& fn) {
  if (path == "-") return fn(io.in);
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path);
  return fn(file);
}

PredicateMap predicate_map() {
  const char* path = std::getenv(kPredicateMapEnv);
  if (path == nullptr || *path == '\0') return PredicateMap::defaults();
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::IoError, std::string("cannot open predicate map ") + path);
  return PredicateMap::parse(file);
}

ProvGraph read_graph(const std::string& path, const std::string& format, GraphKind kind, Streams& io) {
  return with_input(path, io, [&](std::istream& s) {
    if (format == "trace") return load_trace_document(s, kind);
    auto parsed = parse_ntriples(s);
    if (parsed.skipped_literals > 0)
      io.err << path << ": skipped " << parsed.skipped_literals << " literal-object triples\n";
    return infer_roles(triples_to_graph(parsed.triples, predicate_map(), kind));
  });
}

Trie read_trie(const std::string& path, Streams& io) {
  return with_input(path, io, [](std::istream& s) { return load_trie(s); });
}

// Writes through a sibling temporary so a failed run never leaves a partial file.
template <class Fn>
void write_atomically(const std::string& path, Fn&& fn) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  try {
    {
      std::ofstream file(tmp, std::ios::trunc);
      if (!file) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
      fn(file);
      file.flush();
      if (!file) throw Error(ErrorCode::IoError, "failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

struct IndexArgs {
  std::vector<std::string> inputs;
  std::string format = "trace";
  std::string mode = "dag";
  std::size_t ngram = 0;
  std::string out;
};

int cmd_index(const IndexArgs& a, Streams& io) {
  const TrieMode mode = *parse_trie_mode(a.mode);
  const GraphKind kind = mode == TrieMode::DAG ? GraphKind::DAG : GraphKind::DG;
  Trie trie(mode, mode == TrieMode::DAG ? a.ngram : 0);

  for (const auto& path : a.inputs) {
    ProvGraph g = read_graph(path, a.format, kind, io);
    if (mode == TrieMode::DG) {
      index_graph_dg(trie, g);
      continue;
    }
    CanonicalSequence seq = sequence(g);
    if (seq.items.empty()) continue;
    if (a.ngram == 0) {
      trie.insert(seq.items);
    } else {
      for (const auto& w : ngrams(seq, a.ngram).windows) trie.insert(w);
    }
  }

  write_atomically(a.out, [&](std::ostream& s) { save_trie(trie, s); });
  io.out << "traces\t" << a.inputs.size() << '\n'
         << "sequences\t" << trie.sequence_count() << '\n'
         << "nodes\t" << trie.node_count() - 1 << '\n';
  return kExitOk;
}

struct QueryArgs {
  std::string trie;
  std::string start;
  std::string end;
  std::size_t wildcards = 0;
  bool count_only = false;
  std::size_t limit = 0;
  bool strict = false;
};

int cmd_query(const QueryArgs& a, Streams& io) {
  Trie trie = read_trie(a.trie, io);
  QueryPattern pattern{split_uris(a.start), a.wildcards, ResourceId(a.end)};
  QueryOptions options;
  options.strict = a.strict;
  if (a.count_only) {
    io.out << count_paths(trie, pattern, options) << '\n';
    return kExitOk;
  }
  QueryResult result = q1(trie, pattern, options);
  if (result.status == QueryStatus::UnknownResource)
    io.err << "no indexed sequence starts with " << pattern.prefix.front().str() << '\n';
  std::size_t shown = 0;
  for (const auto& m : result.matches) {
    if (a.limit != 0 && shown == a.limit) break;
    io.out << join(m.path) << '\t' << m.freq << '\t' << format_double("%.9g", m.likelihood) << '\n';
    ++shown;
  }
  return kExitOk;
}

struct SuggestArgs {
  std::string trie;
  std::string prefix;
  std::size_t ahead = 1;
  std::size_t top = 5;
};

int cmd_suggest(const SuggestArgs& a, Streams& io) {
  Trie trie = read_trie(a.trie, io);
  for (const auto& s : q2_suggest(trie, split_uris(a.prefix), a.ahead, a.top))
    io.out << join(s.completion) << '\t' << format_double("%.6f", s.likelihood) << '\n';
  return kExitOk;
}

struct StatsArgs {
  std::string trie;
  std::size_t depth = 0;
};

int cmd_stats(const StatsArgs& a, Streams& io) {
  Trie trie = read_trie(a.trie, io);
  const std::size_t height = trie.depth_counts().size();
  const std::size_t first = a.depth == 0 ? 1 : a.depth;
  const std::size_t last = a.depth == 0 ? height : a.depth + 1;
  for (std::size_t d = first; d < last; ++d)
    for (const auto& e : depth_table(trie, d)) io.out << d << '\t' << e.id.str() << '\t' << e.freq << '\n';
  return kExitOk;
}

struct CliqueArgs {
  std::size_t n = 0;
  std::string out;
};

int cmd_gen_clique(const CliqueArgs& a, Streams& io) {
  TraceDocument doc = graph_to_trace(gen_clique(a.n), "clique-" + std::to_string(a.n));
  if (a.out.empty() || a.out == "-") {
    write_trace_document(doc, io.out);
  } else {
    write_atomically(a.out, [&](std::ostream& s) { write_trace_document(doc, s); });
  }
  return kExitOk;
}

struct OracleArgs {
  std::string input;
  std::string format = "trace";
  std::string start;
  std::string end;
  std::size_t steps = 1;
  bool count_only = false;
  std::size_t n = 0;
  bool all_pairs = false;
};

int cmd_oracle_walks(const OracleArgs& a, Streams& io) {
  ProvGraph g = read_graph(a.input, a.format, GraphKind::DG, io);
  ResourceId start(a.start), end(a.end);
  if (a.count_only) {
    io.out << count_walks(g, start, end, a.steps) << '\n';
    return kExitOk;
  }
  for (const auto& w : enumerate_walks(g, start, end, a.steps).walks) io.out << join(w) << '\n';
  return kExitOk;
}

int cmd_oracle_clique(const OracleArgs& a, Streams& io) {
  io.out << (a.all_pairs ? all_pairs_clique_count(a.n, a.steps) : clique_walk_count(a.n, a.steps)) << '\n';
  return kExitOk;
}

struct BenchArgs {
  std::string input;
  std::string format = "trace";
  std::size_t clique = 0;
  std::string trie;
  std::string engine = "trie";
  std::string dataset;
  std::string start = ":r0";
  std::string end = ":r1";
  std::size_t min_wildcards = 1;
  std::size_t max_wildcards = 9;
  std::size_t trials = 7;
  std::size_t warmup = 2;
  bool materialize = false;
  std::string out;
};

int cmd_bench(const BenchArgs& a, Streams& io) {
  if (a.input.empty() && a.clique == 0 && (a.trie.empty() || a.engine != "trie"))
    throw Error(ErrorCode::InvalidArgument, "bench needs --input or --clique (or --trie for the trie engine)");

  std::optional<ProvGraph> graph;
  if (a.clique != 0) {
    graph = gen_clique(a.clique);
  } else if (!a.input.empty()) {
    graph = read_graph(a.input, a.format, GraphKind::DG, io);
  }

  BenchConfig config;
  config.dataset = a.dataset;
  if (config.dataset.empty())
    config.dataset = a.clique != 0 ? std::to_string(a.clique) + "-clique"
                                   : fs::path(a.input.empty() ? a.trie : a.input).stem().string();
  config.start = ResourceId(a.start);
  config.end = ResourceId(a.end);
  config.min_wildcards = a.min_wildcards;
  config.max_wildcards = a.max_wildcards;
  config.trials = a.trials;
  config.warmup = a.warmup;
  config.materialize = a.materialize;

  std::vector<BenchRow> rows;
  try {
    if (a.engine == "trie" || a.engine == "both") {
      Trie trie(TrieMode::DG);
      if (!a.trie.empty()) {
        trie = read_trie(a.trie, io);
      } else {
        index_graph_dg(trie, *graph);
      }
      auto r = run_bench(trie, config);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    if (a.engine == "naive" || a.engine == "both") {
      auto r = run_naive_bench(*graph, config);
      rows.insert(rows.end(), r.begin(), r.end());
    }
  } catch (const BenchAborted& e) {
    rows.insert(rows.end(), e.partial().begin(), e.partial().end());
    io.err << e.what() << "; partial results follow\n";
    write_bench_csv(rows, io.out);
    return kExitDataError;
  }

  if (a.out.empty() || a.out == "-") {
    write_bench_csv(rows, io.out);
  } else {
    write_atomically(a.out, [&](std::ostream& s) { write_bench_csv(rows, s); });
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams io{in, out, err};
  CLI::App app{"Index and query workflow provenance paths with a generalized prefix trie", "provtrie"};
  app.require_subcommand(1, 1);

  IndexArgs index;
  auto* index_cmd = app.add_subcommand("index", "Build a trie from provenance traces");
  index_cmd->add_option("inputs", index.inputs, "Trace files ('-' for stdin)")->required();
  index_cmd->add_option("--format", index.format)->check(CLI::IsMember({"trace", "ntriples"}));
  index_cmd->add_option("--mode", index.mode)->check(CLI::IsMember({"dag", "dg"}));
  index_cmd->add_option("--ngram", index.ngram, "Window length, 0 = whole sequences");
  index_cmd->add_option("--out", index.out, "Trie document to write")->required();

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Wildcard path query (Q1M)");
  query_cmd->add_option("--trie", query.trie)->required();
  query_cmd->add_option("--start", query.start, "Anchor URI, or comma-joined anchors")->required();
  query_cmd->add_option("--end", query.end)->required();
  query_cmd->add_option("--wildcards", query.wildcards);
  query_cmd->add_flag("--count-only", query.count_only);
  query_cmd->add_option("--limit", query.limit, "Maximum lines, 0 = all");
  query_cmd->add_flag("--strict", query.strict, "Require a sequence to end at the terminal");

  SuggestArgs suggest;
  auto* suggest_cmd = app.add_subcommand("suggest", "Most likely continuations of a prefix");
  suggest_cmd->add_option("--trie", suggest.trie)->required();
  suggest_cmd->add_option("--prefix", suggest.prefix, "Comma-joined URIs")->required();
  suggest_cmd->add_option("--ahead", suggest.ahead)->check(CLI::PositiveNumber);
  suggest_cmd->add_option("--top", suggest.top)->check(CLI::PositiveNumber);

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Per-depth frequency table");
  stats_cmd->add_option("--trie", stats.trie)->required();
  stats_cmd->add_option("--depth", stats.depth, "Single depth, 0 = all");

  CliqueArgs clique;
  auto* clique_cmd = app.add_subcommand("gen-clique", "Emit a complete graph as a trace document");
  clique_cmd->add_option("n", clique.n)->required();
  clique_cmd->add_option("--out", clique.out);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force and closed-form path counts");
  oracle_cmd->require_subcommand(1, 1);
  auto* walks_cmd = oracle_cmd->add_subcommand("walks", "Enumerate walks on a graph");
  walks_cmd->add_option("--input", oracle.input)->required();
  walks_cmd->add_option("--format", oracle.format)->check(CLI::IsMember({"trace", "ntriples"}));
  walks_cmd->add_option("--start", oracle.start)->required();
  walks_cmd->add_option("--end", oracle.end)->required();
  walks_cmd->add_option("--steps", oracle.steps, "Edges per walk")->check(CLI::PositiveNumber);
  walks_cmd->add_flag("--count-only", oracle.count_only);
  auto* formula_cmd = oracle_cmd->add_subcommand("clique", "Closed-form clique walk count");
  formula_cmd->add_option("--n", oracle.n)->required();
  formula_cmd->add_option("--steps", oracle.steps)->check(CLI::PositiveNumber);
  formula_cmd->add_flag("--all-pairs", oracle.all_pairs);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time Q1M queries over a range of wildcards");
  bench_cmd->add_option("--input", bench.input, "Graph file");
  bench_cmd->add_option("--format", bench.format)->check(CLI::IsMember({"trace", "ntriples"}));
  bench_cmd->add_option("--clique", bench.clique, "Use a generated n-clique");
  bench_cmd->add_option("--trie", bench.trie, "Prebuilt trie for the trie engine");
  bench_cmd->add_option("--engine", bench.engine)->check(CLI::IsMember({"trie", "naive", "both"}));
  bench_cmd->add_option("--dataset", bench.dataset);
  bench_cmd->add_option("--start", bench.start);
  bench_cmd->add_option("--end", bench.end);
  bench_cmd->add_option("--min-wildcards", bench.min_wildcards);
  bench_cmd->add_option("--max-wildcards", bench.max_wildcards);
  bench_cmd->add_option("--trials", bench.trials)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--warmup", bench.warmup);
  bench_cmd->add_flag("--materialize", bench.materialize);
  bench_cmd->add_option("--out", bench.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*index_cmd) return cmd_index(index, io);
    if (*query_cmd) return cmd_query(query, io);
    if (*suggest_cmd) return cmd_suggest(suggest, io);
    if (*stats_cmd) return cmd_stats(stats, io);
    if (*clique_cmd) return cmd_gen_clique(clique, io);
    if (*walks_cmd) return cmd_oracle_walks(oracle, io);
    if (*formula_cmd) return cmd_oracle_clique(oracle, io);
    if (*bench_cmd) return cmd_bench(bench, io);
  } catch (const Error& e) {
    err << "provtrie: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "provtrie: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace provtrie
