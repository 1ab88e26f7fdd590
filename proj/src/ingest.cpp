#include "provtrie/ingest.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>

#include <nlohmann/json.hpp>

#include "provtrie/error.hpp"

namespace provtrie {

namespace {

constexpr const char* kProv = "http://www.w3.org/ns/prov#";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t lineno) : s_(line), lineno_(lineno) {}

  void skip_ws() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno_) + ": " + what);
  }

  std::string iri() {
    if (peek() != '<') fail("expected '<'");
    const auto close = s_.find('>', pos_ + 1);
    if (close == std::string_view::npos) fail("unbalanced angle brackets");
    std::string out(s_.substr(pos_ + 1, close - pos_ - 1));
    if (out.empty()) fail("empty IRI");
    if (out.find_first_of("< \t") != std::string::npos) fail("unbalanced angle brackets");
    pos_ = close + 1;
    return out;
  }

  std::string blank_node() {
    if (s_.substr(pos_, 2) != "_:") fail("expected blank node");
    const auto start = pos_;
    pos_ += 2;
    while (!at_end() && !is_space(peek()) && peek() != '.') ++pos_;
    if (pos_ == start + 2) fail("empty blank node label");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string resource() {
    if (peek() == '<') return iri();
    if (peek() == '_') return blank_node();
    fail("expected IRI or blank node");
  }

  void literal() {
    ++pos_;  // opening quote
    bool closed = false;
    while (!at_end()) {
      const char c = s_[pos_++];
      if (c == '\\') {
        if (at_end()) fail("dangling escape in literal");
        ++pos_;
      } else if (c == '"') {
        closed = true;
        break;
      }
    }
    if (!closed) fail("unterminated literal");
    if (peek() == '@') {
      ++pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) ++pos_;
    } else if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      iri();
    }
  }

  void end_of_statement() {
    skip_ws();
    if (peek() != '.') fail("missing terminal '.'");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("unexpected text after '.'");
  }

 private:
  std::string_view s_;
  std::size_t lineno_;
  std::size_t pos_ = 0;
};

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (is_space(s[b]) || s[b] == '\n')) ++b;
  while (e > b && (is_space(s[e - 1]) || s[e - 1] == '\n')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

NTriplesResult parse_ntriples(std::istream& in) {
  NTriplesResult out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    LineParser p(line, lineno);
    p.skip_ws();
    if (p.at_end()) {
      ++out.blanks;
      continue;
    }
    if (p.peek() == '#') {
      ++out.comments;
      continue;
    }
    Triple t;
    t.subject = p.resource();
    p.skip_ws();
    t.predicate = p.iri();
    p.skip_ws();
    if (p.peek() == '"') {
      p.literal();
      p.end_of_statement();
      ++out.skipped_literals;
      continue;
    }
    t.object = p.resource();
    p.end_of_statement();
    out.triples.push_back(std::move(t));
  }
  return out;
}

PredicateMap PredicateMap::defaults() {
  PredicateMap m;
  m.add(std::string(kProv) + "used", EdgeDirection::ObjectToSubject);
  m.add(std::string(kProv) + "wasGeneratedBy", EdgeDirection::ObjectToSubject);
  m.add(std::string(kProv) + "wasDerivedFrom", EdgeDirection::ObjectToSubject);
  return m;
}

PredicateMap PredicateMap::parse(std::istream& in) {
  PredicateMap m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = strip(line);
    if (text.empty() || text.front() == '#') continue;
    const auto split = text.find_first_of(" \t");
    if (split == std::string::npos)
      throw Error(ErrorCode::SyntaxError, "predicate map line " + std::to_string(lineno) + ": missing direction");
    std::string predicate = text.substr(0, split);
    const std::string direction = strip(std::string_view(text).substr(split));
    if (predicate.size() >= 2 && predicate.front() == '<' && predicate.back() == '>')
      predicate = predicate.substr(1, predicate.size() - 2);
    if (predicate.empty())
      throw Error(ErrorCode::SyntaxError, "predicate map line " + std::to_string(lineno) + ": empty predicate");
    if (direction == "s2o") {
      m.add(std::move(predicate), EdgeDirection::SubjectToObject);
    } else if (direction == "o2s") {
      m.add(std::move(predicate), EdgeDirection::ObjectToSubject);
    } else {
      throw Error(ErrorCode::SyntaxError,
                  "predicate map line " + std::to_string(lineno) + ": direction must be s2o or o2s");
    }
  }
  return m;
}

void PredicateMap::add(std::string predicate, EdgeDirection direction) {
  if (find(predicate)) throw Error(ErrorCode::InvalidArgument, "predicate mapped twice: " + predicate);
  rules_.push_back(Rule{std::move(predicate), direction});
}

std::optional<EdgeDirection> PredicateMap::find(const std::string& predicate) const {
  for (const auto& r : rules_)
    if (r.predicate == predicate) return r.direction;
  return std::nullopt;
}

ProvGraph triples_to_graph(const std::vector<Triple>& triples, const PredicateMap& pmap, GraphKind kind) {
  ProvGraph g(kind);
  for (const auto& t : triples) {
    auto dir = pmap.find(t.predicate);
    if (!dir) continue;
    ResourceId s(t.subject), o(t.object);
    g.add_node(s);
    g.add_node(o);
    if (*dir == EdgeDirection::SubjectToObject) {
      g.add_edge(s, o);
    } else {
      g.add_edge(o, s);
    }
  }
  return g;
}

TraceDocument parse_trace_document(std::istream& in) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("trace document is not valid JSON: ") + e.what());
  }
  TraceDocument out;
  try {
    out.trace_id = doc.at("trace_id").get<std::string>();
    std::set<std::string> ids;
    for (const auto& n : doc.at("nodes")) {
      TraceDocument::Node node;
      node.id = n.at("id").get<std::string>();
      if (node.id.empty()) throw Error(ErrorCode::SchemaError, "node id must be nonempty");
      if (n.contains("role") && !n.at("role").is_null()) {
        const auto text = n.at("role").get<std::string>();
        node.role = parse_role(text);
        if (!node.role) throw Error(ErrorCode::SchemaError, "unknown role '" + text + "' for " + node.id);
      }
      ids.insert(node.id);
      out.nodes.push_back(std::move(node));
    }
    for (const auto& e : doc.at("edges")) {
      TraceDocument::Edge edge{e.at("from").get<std::string>(), e.at("to").get<std::string>()};
      if (!ids.count(edge.from) || !ids.count(edge.to))
        throw Error(ErrorCode::SchemaError, "edge " + edge.from + " -> " + edge.to + " has a dangling endpoint");
      out.edges.push_back(std::move(edge));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return out;
}

void write_trace_document(const TraceDocument& doc, std::ostream& out) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& n : doc.nodes) {
    json rec = {{"id", n.id}};
    if (n.role) rec["role"] = to_string(*n.role);
    nodes.push_back(std::move(rec));
  }
  json edges = json::array();
  for (const auto& e : doc.edges) edges.push_back({{"from", e.from}, {"to", e.to}});
  json j = {{"trace_id", doc.trace_id}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  out << j.dump(1) << '\n';
}

ProvGraph trace_to_graph(const TraceDocument& doc, GraphKind kind) {
  ProvGraph g(kind);
  for (const auto& n : doc.nodes) {
    if (n.role) {
      g.add_node(ResourceId(n.id), *n.role);
    } else {
      g.add_node(ResourceId(n.id));
    }
  }
  for (const auto& e : doc.edges) {
    ResourceId from(e.from), to(e.to);
    if (!g.contains(from) || !g.contains(to))
      throw Error(ErrorCode::SchemaError, "edge " + e.from + " -> " + e.to + " has a dangling endpoint");
    g.add_edge(from, to);
  }
  return infer_roles(g);
}

TraceDocument graph_to_trace(const ProvGraph& g, std::string trace_id) {
  TraceDocument doc;
  doc.trace_id = std::move(trace_id);
  for (const auto& [id, info] : g.nodes())
    doc.nodes.push_back({id.str(), info.explicit_role ? std::optional<Role>(info.role) : std::nullopt});
  for (const auto& [from, to] : g.edges()) doc.edges.push_back({from.str(), to.str()});
  return doc;
}

ProvGraph load_trace_document(std::istream& in, GraphKind kind) {
  return trace_to_graph(parse_trace_document(in), kind);
}

}  // namespace provtrie
