#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "provtrie/cli.hpp"
#include "provtrie/query.hpp"
#include "provtrie/trie.hpp"

using namespace provtrie;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("provtrie-cli-" + std::string(info->name()) + "-" +
                                        std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

const char* kLinearTrace = R"({"trace_id": "lin", "nodes": [{"id": ":a"}, {"id": ":b"}, {"id": ":c"},
  {"id": ":d"}, {"id": ":e"}], "edges": [{"from": ":a", "to": ":b"}, {"from": ":b", "to": ":c"},
  {"from": ":c", "to": ":d"}, {"from": ":d", "to": ":e"}]})";

}  // namespace

TEST_F(CliTest, CliqueIndexQueryPipeline) {
  ASSERT_EQ(cli({"gen-clique", "4", "--out", path("k4.json")}).code, 0);
  auto idx = cli({"index", path("k4.json"), "--mode", "dg", "--out", path("k4.trie")});
  ASSERT_EQ(idx.code, 0) << idx.err;
  EXPECT_NE(idx.out.find("traces\t1\n"), std::string::npos);

  auto q = cli({"query", "--trie", path("k4.trie"), "--start", ":r0", "--end", ":r1", "--wildcards", "2",
                "--count-only"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_EQ(q.out, "7\n");

  auto listed = cli({"query", "--trie", path("k4.trie"), "--start", ":r0", "--end", ":r1", "--wildcards", "1"});
  ASSERT_EQ(listed.code, 0);
  std::istringstream lines(listed.out);
  std::string line;
  std::vector<std::string> paths;
  while (std::getline(lines, line)) paths.push_back(line.substr(0, line.find('\t')));
  EXPECT_EQ(paths, (std::vector<std::string>{":r0,:r2,:r1", ":r0,:r3,:r1"}));

  auto limited = cli({"query", "--trie", path("k4.trie"), "--start", ":r0", "--end", ":r1", "--wildcards", "2",
                      "--limit", "3"});
  EXPECT_EQ(std::count(limited.out.begin(), limited.out.end(), '\n'), 3);
}

TEST_F(CliTest, GenCliqueToStdoutMatchesFile) {
  auto std_out = cli({"gen-clique", "3"});
  ASSERT_EQ(std_out.code, 0);
  ASSERT_EQ(cli({"gen-clique", "3", "--out", path("k3.json")}).code, 0);
  EXPECT_EQ(std_out.out, slurp(path("k3.json")));
  EXPECT_NE(std_out.out.find("clique-3"), std::string::npos);
}

TEST_F(CliTest, LinearTraceWholeAndWindows) {
  auto trace = write("lin.json", kLinearTrace);
  auto whole = cli({"index", trace, "--out", path("whole.trie")});
  ASSERT_EQ(whole.code, 0) << whole.err;
  EXPECT_EQ(whole.out, "traces\t1\nsequences\t1\nnodes\t5\n");

  auto windows = cli({"index", trace, "--ngram", "3", "--out", path("win.trie")});
  ASSERT_EQ(windows.code, 0) << windows.err;
  EXPECT_NE(windows.out.find("sequences\t3\n"), std::string::npos);

  auto strict_windows = cli({"query", "--trie", path("win.trie"), "--start", ":a", "--end", ":c", "--wildcards",
                             "1", "--strict"});
  EXPECT_EQ(strict_windows.code, 1);

  auto strict = cli({"query", "--trie", path("whole.trie"), "--start", ":a", "--end", ":e", "--wildcards", "3",
                     "--strict"});
  ASSERT_EQ(strict.code, 0) << strict.err;
  EXPECT_EQ(strict.out, ":a,:b,:c,:d,:e\t1\t1\n");

  auto zero = cli({"query", "--trie", path("whole.trie"), "--start", ":a", "--end", ":a", "--wildcards", "0",
                   "--count-only"});
  ASSERT_EQ(zero.code, 0);
  EXPECT_EQ(zero.out, "0\n");
}

TEST_F(CliTest, StdinInputAndUnknownAnchor) {
  auto idx = cli({"index", "-", "--out", path("s.trie")}, kLinearTrace);
  ASSERT_EQ(idx.code, 0) << idx.err;
  auto q = cli({"query", "--trie", path("s.trie"), "--start", ":zzz", "--end", ":e", "--wildcards", "1"});
  EXPECT_EQ(q.code, 0);
  EXPECT_EQ(q.out, "");
  EXPECT_NE(q.err.find(":zzz"), std::string::npos);
}

TEST_F(CliTest, SuggestDoesNotPad) {
  auto trace = write("lin.json", kLinearTrace);
  ASSERT_EQ(cli({"index", trace, "--out", path("t.trie")}).code, 0);
  auto s = cli({"suggest", "--trie", path("t.trie"), "--prefix", ":a,:b", "--ahead", "2", "--top", "10"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.out, ":c,:d\t1.000000\n");
  EXPECT_EQ(cli({"suggest", "--trie", path("t.trie"), "--prefix", ":a", "--top", "0"}).code, 2);
}

TEST_F(CliTest, StatsOnSavedTrie) {
  Trie t(TrieMode::DAG);
  auto seq = [](std::initializer_list<const char*> xs) {
    Sequence s;
    for (auto x : xs) s.emplace_back(x);
    return s;
  };
  for (const auto& s : {seq({"N1", "N2", "N1"}), seq({"N1", "N2", "N3"}), seq({"N1", "N3"}), seq({"N1", "N4"}),
                        seq({"N5"})})
    t.insert(s);
  {
    std::ofstream f(path("fig.trie"));
    save_trie(t, f);
  }
  auto d1 = cli({"stats", "--trie", path("fig.trie"), "--depth", "1"});
  ASSERT_EQ(d1.code, 0) << d1.err;
  EXPECT_EQ(d1.out, "1\tN1\t4\n1\tN5\t1\n");

  auto all = cli({"stats", "--trie", path("fig.trie")});
  EXPECT_EQ(std::count(all.out.begin(), all.out.end(), '\n'), 2 + 3 + 2);

  auto beyond = cli({"stats", "--trie", path("fig.trie"), "--depth", "9"});
  EXPECT_EQ(beyond.code, 0);
  EXPECT_EQ(beyond.out, "");
}

TEST_F(CliTest, OracleSubcommands) {
  EXPECT_EQ(cli({"oracle", "clique", "--n", "8", "--steps", "10"}).out, "35309406\n");
  EXPECT_EQ(cli({"oracle", "clique", "--n", "4", "--steps", "7", "--all-pairs"}).out, "3282\n");
  ASSERT_EQ(cli({"gen-clique", "4", "--out", path("k4.json")}).code, 0);
  auto walks = cli({"oracle", "walks", "--input", path("k4.json"), "--start", ":r0", "--end", ":r1", "--steps", "2"});
  EXPECT_EQ(walks.out, ":r0,:r2,:r1\n:r0,:r3,:r1\n");
  EXPECT_EQ(cli({"oracle", "walks", "--input", path("k4.json"), "--start", ":r0", "--end", ":r1", "--steps", "7",
                 "--count-only"})
                .out,
            "547\n");
  EXPECT_EQ(cli({"oracle", "clique", "--n", "8", "--steps", "40"}).code, 1);
}

TEST_F(CliTest, BenchCsv) {
  auto b = cli({"bench", "--clique", "4", "--engine", "both", "--max-wildcards", "2", "--trials", "1", "--warmup",
                "0"});
  ASSERT_EQ(b.code, 0) << b.err;
  std::istringstream lines(b.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "dataset,engine,wildcards,n_paths,time_ns,trials");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line.substr(0, line.rfind(',', line.rfind(',') - 1)));
  EXPECT_EQ(rows, (std::vector<std::string>{"4-clique,trie,1,2", "4-clique,trie,2,7", "4-clique,naive,1,2",
                                            "4-clique,naive,2,7"}));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"query", "--trie", "x"}).code, 2);
  EXPECT_EQ(cli({"index", "a.json", "--mode", "tree", "--out", "x"}).code, 2);
  EXPECT_EQ(cli({"query", "--trie", "x", "--start", "a", "--end", "b", "--wildcards", "many"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, DataErrorsLeaveNoPartialOutput) {
  auto corrupt = write("bad.trie", "{\"header\": {\"format_version\": 1");
  auto q = cli({"query", "--trie", corrupt, "--start", ":a", "--end", ":b", "--wildcards", "1"});
  EXPECT_EQ(q.code, 1);
  EXPECT_NE(q.err.find("provtrie:"), std::string::npos);

  EXPECT_EQ(cli({"query", "--trie", path("missing.trie"), "--start", ":a", "--end", ":b"}).code, 1);

  auto cyclic = write("cyc.json", R"({"trace_id": "c", "nodes": [{"id": "a"}, {"id": "b"}],
    "edges": [{"from": "a", "to": "b"}, {"from": "b", "to": "a"}]})");
  auto good = write("lin.json", kLinearTrace);
  auto idx = cli({"index", good, cyclic, "--out", path("out.trie")});
  EXPECT_EQ(idx.code, 1);
  EXPECT_FALSE(fs::exists(path("out.trie")));
  for (const auto& e : fs::directory_iterator(dir_)) EXPECT_NE(e.path().extension(), ".tmp") << e.path();

  auto bad_nt = write("bad.nt", "<urn:a> <urn:p> <urn:b>\n");
  auto nt = cli({"index", bad_nt, "--format", "ntriples", "--out", path("nt.trie")});
  EXPECT_EQ(nt.code, 1);
  EXPECT_NE(nt.err.find("line 1"), std::string::npos);
}

TEST_F(CliTest, DeterministicOutputAndMatchesInMemory) {
  ASSERT_EQ(cli({"gen-clique", "5", "--out", path("k5.json")}).code, 0);
  ASSERT_EQ(cli({"index", path("k5.json"), "--mode", "dg", "--out", path("a.trie")}).code, 0);
  ASSERT_EQ(cli({"index", path("k5.json"), "--mode", "dg", "--out", path("b.trie")}).code, 0);
  EXPECT_EQ(slurp(path("a.trie")), slurp(path("b.trie")));

  Trie mem(TrieMode::DG);
  index_graph_dg(mem, gen_clique(5));
  for (std::size_t m = 1; m <= 4; ++m) {
    auto q = cli({"query", "--trie", path("a.trie"), "--start", ":r1", "--end", ":r3", "--wildcards",
                  std::to_string(m)});
    ASSERT_EQ(q.code, 0);
    std::ostringstream expected;
    auto r = q1(mem, QueryPattern{{ResourceId(":r1")}, m, ResourceId(":r3")});
    for (const auto& match : r.matches) {
      std::string joined;
      for (const auto& id : match.path) joined += (joined.empty() ? "" : ",") + id.str();
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.9g", match.likelihood);
      expected << joined << '\t' << match.freq << '\t' << buf << '\n';
    }
    EXPECT_EQ(q.out, expected.str()) << "M=" << m;
  }
}
