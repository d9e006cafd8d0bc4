#ifndef CHP_GRAPH_IO_HPP
#define CHP_GRAPH_IO_HPP

#include <string>

#include "chp/decomposition.hpp"
#include "chp/graph.hpp"
#include "chp/partition.hpp"

namespace chp {

// graph6: McKay's ASCII format, bit-exact. An optional ">>graph6<<" header and
// one trailing newline are tolerated on input; decode errors carry the byte
// offset.
std::string to_graph6(const Graph& g);
Graph from_graph6(const std::string& text);

// DOT output for rendering; labels become node attributes when present.
std::string to_dot(const Graph& g, const std::string& name = "G");

// JSON {"n": ..., "edges": [[u,v],...], "labels": [...]} (labels optional).
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

// JSON {"graph_n": ..., "nodes": ..., "tree_edges": [[a,b],...],
//       "bags": [[...],...], "node_labels": [...]}; round-trips bit-exactly.
std::string decomposition_to_json(const TreeDecomposition& td);
TreeDecomposition decomposition_from_json(const std::string& text);

// JSON {"parts": [[ids],...]}.
std::string partition_to_json(const Partition& p);
Partition partition_from_json(const std::string& text, const Graph& g);

// Dispatch on extension: .g6/.graph6 or .json.
Graph read_graph_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace chp

#endif
