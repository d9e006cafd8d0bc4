#ifndef CHP_GRAPH_HPP
#define CHP_GRAPH_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chp/bitset.hpp"
#include "chp/errors.hpp"

namespace chp {

// A set of vertex ids of one graph, kept sorted ascending and duplicate-free.
using VertexSet = std::vector<int>;

constexpr int kDefaultContainmentCap = 8;
constexpr int kDefaultIsoCap = 12;

// Adjacency bitset rows are materialized only up to this order; larger graphs
// fall back to sorted neighbor lists (constructions can reach ~10^5 vertices,
// where n^2 bits is not affordable).
constexpr int kDenseAdjacencyLimit = 8192;

// Immutable simple undirected graph on vertex ids 0..n-1.
class Graph {
public:
    Graph() = default;

    // Duplicate edges collapse; self-loops and out-of-range ids are rejected.
    static Graph make(int n, const std::vector<std::pair<int, int>>& edges,
                      std::vector<std::string> labels = {});

    int num_vertices() const { return n_; }
    long long num_edges() const { return static_cast<long long>(edges_.size()); }

    bool adjacent(int u, int v) const;
    int degree(int v) const { return static_cast<int>(nbrs_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return nbrs_[v]; }

    // Sorted lexicographically, each stored once as (u,v) with u < v.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_adjacency_rows() const { return !rows_.empty(); }
    const Bitset& adjacency_row(int v) const { return rows_[v]; }

    // Empty when the graph carries no provenance labels, else size n.
    const std::vector<std::string>& labels() const { return labels_; }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> nbrs_;
    std::vector<Bitset> rows_;
    std::vector<std::string> labels_;
};

void require_vertex_set(const Graph& g, const VertexSet& s, const char* what);

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_sub;    // old id -> new id, -1 when absent
    std::vector<int> from_sub;  // new id -> old id
};

// G[S]; S must be nonempty and within V(G).
InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

// Maximal connected vertex sets, ordered by minimum member id.
std::vector<VertexSet> components(const Graph& g);

// Component containment: restricted to a vertex universe given as a mask.
std::vector<VertexSet> components_within(const Graph& g, const Bitset& universe);

bool is_connected(const Graph& g, const VertexSet& s);

// Empty and singleton sets count as cliques.
bool is_clique(const Graph& g, const VertexSet& s);

// All q-subsets inducing complete graphs, in lexicographic order.
std::vector<VertexSet> enumerate_cliques(const Graph& g, int size);

// Streaming form; return false from the callback to stop early.
void for_each_clique(const Graph& g, int size, const std::function<bool(const VertexSet&)>& visit);

// First clique of the given size inside the candidate set, lexicographic.
std::optional<VertexSet> find_clique_within(const Graph& g, const VertexSet& candidates, int size);

Graph complement(const Graph& g);

// Witness maps V(H) -> V(G), preserving adjacency and non-adjacency.
// |V(H)| above the cap is a refusal, never a silent answer.
std::optional<std::vector<int>> contains_induced(const Graph& g, const Graph& h,
                                                 int cap = kDefaultContainmentCap);

bool are_isomorphic(const Graph& g, const Graph& h, int cap = kDefaultIsoCap);

}  // namespace chp

#endif
