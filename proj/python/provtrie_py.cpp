#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "provtrie/canonicalize.hpp"
#include "provtrie/error.hpp"
#include "provtrie/ingest.hpp"
#include "provtrie/oracle.hpp"
#include "provtrie/provgraph.hpp"
#include "provtrie/query.hpp"
#include "provtrie/trie.hpp"

namespace py = pybind11;
using namespace provtrie;

namespace {

Sequence to_sequence(const std::vector<std::string>& items) {
  Sequence out;
  out.reserve(items.size());
  for (const auto& s : items) out.emplace_back(s);
  return out;
}

std::vector<std::string> to_strings(const Sequence& seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (const auto& id : seq) out.push_back(id.str());
  return out;
}

GraphKind graph_kind(const std::string& text) {
  if (text == "dag") return GraphKind::DAG;
  if (text == "dg") return GraphKind::DG;
  throw Error(ErrorCode::InvalidArgument, "kind must be 'dag' or 'dg'");
}

TrieMode trie_mode(const std::string& text) {
  auto mode = parse_trie_mode(text);
  if (!mode) throw Error(ErrorCode::InvalidArgument, "mode must be 'dag' or 'dg'");
  return *mode;
}

}  // namespace

PYBIND11_MODULE(_provtrie, m) {
  m.doc() = "Generalized prefix trie index for workflow provenance paths";

  static py::exception<Error> error(m, "ProvtrieError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<ProvGraph>(m, "Graph")
      .def(py::init([](const std::string& kind) { return ProvGraph(graph_kind(kind)); }), py::arg("kind") = "dag")
      .def(
          "add_node",
          [](ProvGraph& g, const std::string& id, std::optional<std::string> role) {
            if (!role) return g.add_node(ResourceId(id));
            auto r = parse_role(*role);
            if (!r) throw Error(ErrorCode::InvalidArgument, "unknown role " + *role);
            g.add_node(ResourceId(id), *r);
          },
          py::arg("id"), py::arg("role") = py::none())
      .def("add_edge",
           [](ProvGraph& g, const std::string& a, const std::string& b) { g.add_edge(ResourceId(a), ResourceId(b)); })
      .def_property_readonly("kind", [](const ProvGraph& g) { return to_string(g.kind()); })
      .def_property_readonly("node_count", &ProvGraph::node_count)
      .def_property_readonly("edge_count", &ProvGraph::edge_count)
      .def("nodes",
           [](const ProvGraph& g) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& [id, info] : g.nodes()) out.emplace_back(id.str(), to_string(info.role));
             return out;
           })
      .def("edges", [](const ProvGraph& g) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [a, b] : g.edges()) out.emplace_back(a.str(), b.str());
        return out;
      });

  m.def("validate_dag", &validate_dag);
  m.def("gen_clique", &gen_clique, py::arg("n"));
  m.def("infer_roles", &infer_roles);
  m.def("sequence", [](const ProvGraph& g) { return to_strings(sequence(g).items); });
  m.def("ngrams", [](const std::vector<std::string>& items, std::size_t n) {
    std::vector<std::vector<std::string>> out;
    for (const auto& w : ngrams(CanonicalSequence{to_sequence(items), std::nullopt}, n).windows)
      out.push_back(to_strings(w));
    return out;
  });

  py::class_<Trie>(m, "Trie")
      .def(py::init([](const std::string& mode, std::size_t ngram) { return Trie(trie_mode(mode), ngram); }),
           py::arg("mode") = "dag", py::arg("ngram") = 0)
      .def("insert", [](Trie& t, const std::vector<std::string>& seq) { t.insert(to_sequence(seq)); })
      .def("insert_dg", [](Trie& t, const std::vector<std::string>& seq) { t.insert_dg(to_sequence(seq)); })
      .def("index_graph", [](Trie& t, const ProvGraph& g) { index_graph_dg(t, g); })
      .def_property_readonly("mode", [](const Trie& t) { return to_string(t.mode()); })
      .def_property_readonly("ngram", &Trie::ngram)
      .def_property_readonly("node_count", [](const Trie& t) { return t.node_count() - 1; })
      .def_property_readonly("sequence_count", &Trie::sequence_count)
      .def("depth_stats", &Trie::depth_stats)
      .def("check_invariants", &Trie::check_invariants)
      .def("dumps",
           [](const Trie& t) {
             std::ostringstream s;
             save_trie(t, s);
             return s.str();
           })
      .def_static("loads",
                  [](const std::string& text) {
                    std::istringstream s(text);
                    return load_trie(s);
                  })
      .def("save",
           [](const Trie& t, const std::string& path) {
             std::ofstream s(path);
             if (!s) throw Error(ErrorCode::IoError, "cannot write " + path);
             save_trie(t, s);
           })
      .def_static("load", [](const std::string& path) {
        std::ifstream s(path);
        if (!s) throw Error(ErrorCode::IoError, "cannot open " + path);
        return load_trie(s);
      })
      .def("__eq__", [](const Trie& a, const Trie& b) { return a == b; });

  m.def(
      "q1",
      [](const Trie& t, const std::vector<std::string>& prefix, std::size_t wildcards, const std::string& terminal,
         bool strict) {
        QueryOptions opts;
        opts.strict = strict;
        std::vector<std::tuple<std::vector<std::string>, std::uint64_t, double>> out;
        for (const auto& match : q1(t, QueryPattern{to_sequence(prefix), wildcards, ResourceId(terminal)}, opts).matches)
          out.emplace_back(to_strings(match.path), match.freq, match.likelihood);
        return out;
      },
      py::arg("trie"), py::arg("prefix"), py::arg("wildcards"), py::arg("terminal"), py::arg("strict") = false);
  m.def(
      "count_paths",
      [](const Trie& t, const std::vector<std::string>& prefix, std::size_t wildcards, const std::string& terminal) {
        return count_paths(t, QueryPattern{to_sequence(prefix), wildcards, ResourceId(terminal)});
      },
      py::arg("trie"), py::arg("prefix"), py::arg("wildcards"), py::arg("terminal"));
  m.def(
      "suggest",
      [](const Trie& t, const std::vector<std::string>& prefix, std::size_t ahead, std::size_t top) {
        std::vector<std::pair<std::vector<std::string>, double>> out;
        for (const auto& s : q2_suggest(t, to_sequence(prefix), ahead, top))
          out.emplace_back(to_strings(s.completion), s.likelihood);
        return out;
      },
      py::arg("trie"), py::arg("prefix"), py::arg("ahead") = 1, py::arg("top") = 5);
  m.def("most_probable_at_depth", [](const Trie& t, std::size_t depth) {
    auto e = most_probable_at_depth(t, depth);
    return std::make_tuple(e.id.str(), e.freq, e.share);
  });

  m.def("clique_walk_count", &clique_walk_count, py::arg("n"), py::arg("m"));
  m.def("all_pairs_clique_count", &all_pairs_clique_count, py::arg("n"), py::arg("m"));
  m.def("enumerate_walks", [](const ProvGraph& g, const std::string& a, const std::string& b, std::size_t steps) {
    std::vector<std::vector<std::string>> out;
    for (const auto& w : enumerate_walks(g, ResourceId(a), ResourceId(b), steps).walks) out.push_back(to_strings(w));
    return out;
  });
  m.def("count_walks", [](const ProvGraph& g, const std::string& a, const std::string& b, std::size_t steps) {
    return count_walks(g, ResourceId(a), ResourceId(b), steps);
  });

  m.def("parse_ntriples", [](const std::string& text) {
    std::istringstream s(text);
    auto parsed = parse_ntriples(s);
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& t : parsed.triples) out.emplace_back(t.subject, t.predicate, t.object);
    return py::make_tuple(out, parsed.skipped_literals);
  });
  m.def(
      "load_trace",
      [](const std::string& text, const std::string& kind) {
        std::istringstream s(text);
        return load_trace_document(s, graph_kind(kind));
      },
      py::arg("text"), py::arg("kind") = "dag");
}
