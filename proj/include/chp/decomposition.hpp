#ifndef CHP_DECOMPOSITION_HPP
#define CHP_DECOMPOSITION_HPP

#include <string>
#include <utility>
#include <vector>

#include "chp/graph.hpp"

namespace chp {

// Tree of bags over a graph. Node ids are dense 0..num_nodes()-1.
struct TreeDecomposition {
    int graph_n = 0;
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> tree_edges;
    // Optional provenance, one entry per node when present.
    std::vector<std::string> node_labels;

    int num_nodes() const { return static_cast<int>(bags.size()); }
    int max_bag_size() const;
};

struct TdViolation {
    enum class Kind {
        graph_mismatch,        // decomposition was built for a different order
        bad_tree_edge,         // endpoint out of range
        tree_cycle,            // edge closes a cycle
        tree_disconnected,     // more than one tree component
        bag_out_of_range,      // bag contains a non-vertex
        vertex_uncovered,      // vertex in no bag
        edge_uncovered,        // graph edge with no common bag
        subtree_disconnected,  // nodes holding a vertex do not induce a subtree
    };
    Kind kind;
    int a = -1;  // vertex/node/edge endpoint, by kind
    int b = -1;
    std::string message;
};

// Checks all four decomposition invariants and reports every violation found,
// not just the first.
std::vector<TdViolation> validate(const Graph& g, const TreeDecomposition& td);

// (max bag size) - 1. The decomposition must have at least one node.
int width(const TreeDecomposition& td);

// Smallest node id whose bag contains the clique. Throws GraphError when no
// bag qualifies, which means C is not a clique or the decomposition is broken.
int bag_containing(const TreeDecomposition& td, const VertexSet& clique);

// Decomposition of the composite graph obtained by joining a disjoint copy of
// B completely to the clique C of A: B's nodes are re-numbered after A's, one
// tree edge links the bag holding C to B's first node, and C is added to every
// B bag. `copy_tag` prefixes the provenance labels of B's nodes.
TreeDecomposition attach_copy(const TreeDecomposition& ta, const TreeDecomposition& tb,
                              const VertexSet& c, const std::string& copy_tag = "");

// One new leaf bag = gadget_vertices ∪ family_union, attached where the family
// union (a clique of A) already lives.
TreeDecomposition attach_gadget_bag(const TreeDecomposition& ta, const VertexSet& gadget_vertices,
                                    const VertexSet& family_union,
                                    const std::string& node_tag = "");

}  // namespace chp

#endif
