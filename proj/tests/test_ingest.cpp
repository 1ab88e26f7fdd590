#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "provtrie/error.hpp"
#include "provtrie/ingest.hpp"
#include "support/generators.hpp"

using namespace provtrie;

namespace {

const std::string kProv = "http://www.w3.org/ns/prov#";

NTriplesResult parse(const std::string& text) {
  std::istringstream s(text);
  return parse_ntriples(s);
}

ErrorCode parse_error(const std::string& text, std::string* message = nullptr) {
  try {
    parse(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::InvalidArgument;
}

ResourceId R(const std::string& s) { return ResourceId(s); }

}  // namespace

TEST(ParseNTriples, SingleTriple) {
  auto r = parse("<urn:a> <urn:p> <urn:b> .\n");
  ASSERT_EQ(r.triples.size(), 1u);
  EXPECT_EQ(r.triples[0], (Triple{"urn:a", "urn:p", "urn:b"}));
}

TEST(ParseNTriples, CommentsBlanksAndLiterals) {
  auto r = parse("# comment\n\n   \n<urn:a> <urn:p> \"lit\" .\n<urn:a> <urn:p> \"x\\\"y\"@en .\n"
                 "<urn:a> <urn:p> \"5\"^^<http://www.w3.org/2001/XMLSchema#int> .\n");
  EXPECT_TRUE(r.triples.empty());
  EXPECT_EQ(r.comments, 1u);
  EXPECT_EQ(r.blanks, 2u);
  EXPECT_EQ(r.skipped_literals, 3u);
}

TEST(ParseNTriples, BlankNodesAndTrailingComment) {
  auto r = parse("_:x <urn:p> _:y . # trailing\n<urn:a> <urn:p> _:y.\n");
  ASSERT_EQ(r.triples.size(), 2u);
  EXPECT_EQ(r.triples[0].subject, "_:x");
  EXPECT_EQ(r.triples[0].object, "_:y");
  EXPECT_EQ(r.triples[1].object, "_:y");
}

TEST(ParseNTriples, StrictErrorsNameTheLine) {
  std::string msg;
  EXPECT_EQ(parse_error("<urn:a> <urn:p> <urn:b> .\n<urn:a> <urn:p> <urn:b>\n", &msg), ErrorCode::SyntaxError);
  EXPECT_NE(msg.find("line 2"), std::string::npos);
  EXPECT_EQ(parse_error("<urn:a <urn:p> <urn:b> .\n"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("<urn:a> <urn:p> <urn:b .\n"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("<urn:a> <urn:p> \"open .\n"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("<urn:a> <urn:p> <urn:b> . junk\n"), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("urn:a <urn:p> <urn:b> .\n"), ErrorCode::SyntaxError);
}

TEST(ParseNTriples, EveryLineIsClassified) {
  const std::string text =
      "# c\n<urn:a> <urn:p> <urn:b> .\n\n<urn:a> <urn:p> \"l\" .\n_:b <urn:q> <urn:c> .\n# d\n";
  auto r = parse(text);
  EXPECT_EQ(r.triples.size() + r.comments + r.blanks + r.skipped_literals, 6u);
}

TEST(TriplesToGraph, DefaultMapDirections) {
  auto pmap = PredicateMap::defaults();
  std::vector<Triple> triples{{"act1", kProv + "used", "ent1"},
                              {"ent2", kProv + "wasGeneratedBy", "act1"},
                              {"ent2", "urn:unmapped", "ent9"}};
  auto g = triples_to_graph(triples, pmap);
  EXPECT_TRUE(g.has_edge(R("ent1"), R("act1")));
  EXPECT_TRUE(g.has_edge(R("act1"), R("ent2")));
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_FALSE(g.contains(R("ent9")));
  EXPECT_FALSE(g.nodes().at(R("act1")).explicit_role);
}

TEST(TriplesToGraph, ReversingARuleReversesEveryEdge) {
  std::mt19937 rng(13);
  auto names = testkit::random_names(rng, 8);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  std::vector<Triple> triples;
  for (int i = 0; i < 30; ++i) {
    auto a = pick(rng), b = pick(rng);
    if (a == b) continue;
    triples.push_back({names[a].str(), "urn:flow", names[b].str()});
  }
  PredicateMap forward, backward;
  forward.add("urn:flow", EdgeDirection::SubjectToObject);
  backward.add("urn:flow", EdgeDirection::ObjectToSubject);
  auto f = triples_to_graph(triples, forward, GraphKind::DG);
  auto b = triples_to_graph(triples, backward, GraphKind::DG);
  ASSERT_EQ(f.edge_count(), b.edge_count());
  for (const auto& [from, to] : f.edges()) EXPECT_TRUE(b.has_edge(to, from));
}

TEST(TriplesToGraph, SelfLoopPropagates) {
  PredicateMap pmap;
  pmap.add("urn:p", EdgeDirection::SubjectToObject);
  EXPECT_THROW(triples_to_graph({{"a", "urn:p", "a"}}, pmap), Error);
}

TEST(PredicateMap, ParseFile) {
  std::istringstream s("# custom\n<urn:p> s2o\nurn:q   o2s\n\n");
  auto m = PredicateMap::parse(s);
  EXPECT_EQ(m.find("urn:p"), EdgeDirection::SubjectToObject);
  EXPECT_EQ(m.find("urn:q"), EdgeDirection::ObjectToSubject);
  std::istringstream bad("<urn:p> sideways\n");
  EXPECT_THROW(PredicateMap::parse(bad), Error);
  std::istringstream dup("<urn:p> s2o\n<urn:p> o2s\n");
  EXPECT_THROW(PredicateMap::parse(dup), Error);
}

TEST(TraceDocument, LoadsAndInfersRoles) {
  std::istringstream s(R"({"trace_id": "t1",
    "nodes": [{"id": "urn:in"}, {"id": "urn:out"}],
    "edges": [{"from": "urn:in", "to": "urn:out"}]})");
  auto g = load_trace_document(s);
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.role(R("urn:in")), Role::Input);
  EXPECT_EQ(g.role(R("urn:out")), Role::Output);
}

TEST(TraceDocument, SchemaErrors) {
  auto error_of = [](const std::string& text) {
    std::istringstream s(text);
    try {
      load_trace_document(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(error_of(R"({"trace_id": "t", "nodes": [{"id": "a"}], "edges": [{"from": "a", "to": "b"}]})"),
            ErrorCode::SchemaError);
  EXPECT_EQ(error_of(R"({"nodes": [], "edges": []})"), ErrorCode::SchemaError);
  EXPECT_EQ(error_of(R"({"trace_id": "t", "nodes": [{"id": "a", "role": "boss"}], "edges": []})"),
            ErrorCode::SchemaError);
  EXPECT_EQ(error_of("not json"), ErrorCode::SchemaError);
}

TEST(TraceDocument, ExplicitRolesKept) {
  std::istringstream s(R"({"trace_id": "t", "nodes": [{"id": "a", "role": "process"}, {"id": "b"}],
    "edges": [{"from": "a", "to": "b"}]})");
  auto g = load_trace_document(s);
  EXPECT_EQ(g.role(R("a")), Role::Process);
  EXPECT_EQ(g.role(R("b")), Role::Output);
}

TEST(TraceDocument, RoundTrip) {
  std::mt19937 rng(19);
  for (int i = 0; i < 30; ++i) {
    auto g = infer_roles(testkit::random_dag(rng, 1 + i % 9, 0.3));
    std::stringstream s;
    write_trace_document(graph_to_trace(g, "trace-" + std::to_string(i)), s);
    EXPECT_EQ(load_trace_document(s), g);
  }
  auto clique = gen_clique(5);
  std::stringstream s;
  write_trace_document(graph_to_trace(clique, "k5"), s);
  EXPECT_EQ(load_trace_document(s, GraphKind::DG), clique);
}
