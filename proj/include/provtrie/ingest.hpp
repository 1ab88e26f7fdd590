#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "provtrie/provgraph.hpp"

namespace provtrie {

struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Every input line lands in exactly one bucket.
struct NTriplesResult {
  std::vector<Triple> triples;
  std::size_t skipped_literals = 0;
  std::size_t comments = 0;
  std::size_t blanks = 0;
};

// Strict parser for the N-Triples subset `<s> <p> <o> .` with `_:x` blank
// nodes. Triples with a literal object are counted and skipped. Throws
// SyntaxError naming the line.
NTriplesResult parse_ntriples(std::istream& in);

enum class EdgeDirection { SubjectToObject, ObjectToSubject };

class PredicateMap {
 public:
  struct Rule {
    std::string predicate;
    EdgeDirection direction;
  };

  // prov:used, prov:wasGeneratedBy and prov:wasDerivedFrom, all object->subject.
  static PredicateMap defaults();
  // Lines of `<predicate-uri> s2o|o2s`; `#` comments and blank lines allowed.
  static PredicateMap parse(std::istream& in);

  // Throws InvalidArgument for a predicate that is already mapped.
  void add(std::string predicate, EdgeDirection direction);
  std::optional<EdgeDirection> find(const std::string& predicate) const;
  const std::vector<Rule>& rules() const noexcept { return rules_; }

 private:
  std::vector<Rule> rules_;
};

// Mapped predicates become edges in the configured direction; endpoint nodes
// are created without an explicit role. Unmapped predicates are ignored.
ProvGraph triples_to_graph(const std::vector<Triple>& triples, const PredicateMap& pmap,
                           GraphKind kind = GraphKind::DAG);

struct TraceDocument {
  struct Node {
    std::string id;
    std::optional<Role> role;
  };
  struct Edge {
    std::string from;
    std::string to;
  };

  std::string trace_id;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

// Throws SchemaError for missing fields, unknown roles and dangling edges.
TraceDocument parse_trace_document(std::istream& in);
void write_trace_document(const TraceDocument& doc, std::ostream& out);

ProvGraph trace_to_graph(const TraceDocument& doc, GraphKind kind = GraphKind::DAG);
// Explicit roles are written; provisional ones are left out.
TraceDocument graph_to_trace(const ProvGraph& g, std::string trace_id);

// parse_trace_document + trace_to_graph; missing roles come from infer_roles.
ProvGraph load_trace_document(std::istream& in, GraphKind kind = GraphKind::DAG);

}  // namespace provtrie
