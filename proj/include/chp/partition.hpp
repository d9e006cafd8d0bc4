#ifndef CHP_PARTITION_HPP
#define CHP_PARTITION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "chp/graph.hpp"

namespace chp {

constexpr int kDefaultEnumCap = 12;

// Disjoint nonempty vertex sets covering V(G). Canonical form: each part
// sorted, parts ordered by minimum member id.
struct Partition {
    std::vector<VertexSet> parts;
    int graph_n = 0;

    int num_parts() const { return static_cast<int>(parts.size()); }
};

// Validates and canonicalizes. Overlaps and gaps are structural errors.
Partition make_partition(const Graph& g, std::vector<VertexSet> parts);

// Throws GraphError when P is not a partition of V(G).
void require_partition(const Graph& g, const Partition& p);

// True iff every part induces a connected subgraph.
bool is_connected_partition(const Graph& g, const Partition& p);

// Quotient graph: one vertex per part, adjacency = some crossing edge.
struct QuotientGraph {
    Graph graph;
    std::vector<int> part_map;  // vertex id -> part index
};

QuotientGraph quotient(const Graph& g, const Partition& p);

// Hypothesis of the restriction lemma: the neighbourhood of each component of
// G - X must be a clique. On failure, reports one violating component and two
// nonadjacent neighbors.
struct RestrictionPrecondition {
    bool ok = false;
    VertexSet component;
    int u = -1, v = -1;
};

RestrictionPrecondition check_restriction_precondition(const Graph& g, const VertexSet& x);

// Traces of parts on G[X], re-indexed to subgraph ids.
struct Restriction {
    Graph subgraph;
    std::vector<int> to_sub;      // old -> new, -1 when absent
    std::vector<int> from_sub;    // new -> old
    Partition partition;          // over subgraph ids
    std::vector<int> part_origin; // restricted part index -> original part index
    bool forced = false;          // precondition was skipped on request
};

// Throws GraphError citing the offending component unless force is set (the
// escape hatch exists so experiments can watch the lemma fail; forced results
// are flagged).
Restriction restrict_partition(const Graph& g, const Partition& p, const VertexSet& x,
                               bool force = false);

// Lemma outcome (1): a clique on k*r vertices meeting exactly r parts, each in
// exactly k vertices.
struct SpreadWitness {
    VertexSet clique;
    std::vector<int> parts;
};

std::optional<SpreadWitness> outcome_clique_spread(const Graph& g, const Partition& p, int k,
                                                   int r);

// Lemma outcome (2): some part whose induced subgraph contains K_{k+1}.
struct PartCliqueWitness {
    int part = -1;
    VertexSet clique;
};

std::optional<PartCliqueWitness> outcome_part_clique(const Graph& g, const Partition& p, int k);

// --- Exhaustive enumeration of connected partitions -------------------------
//
// Restricted-growth-string enumeration over vertices 0..n-1 with viability
// pruning: after each assignment, a part that cannot be connected using any
// subset of the still-unassigned vertices kills the branch. At the last vertex
// the future set is empty, so viability degenerates to connectivity and every
// emitted partition is connected. Parts come out ordered by minimum member id.
//
// The RGS prefix space doubles as the parallel work split: prefixes() chops
// the search at a fixed depth and run_prefix() owns one disjoint subspace.

class ConnectedPartitionEnumerator {
public:
    ConnectedPartitionEnumerator(const Graph& g, int cap = kDefaultEnumCap);

    // Callback: bool visit(int num_parts, const uint64_t* part_masks, const int* rgs).
    // Return false to stop. run() returns the number of partitions visited.
    template <class F>
    uint64_t run(F&& visit) {
        return run_from(0, visit);
    }

    std::vector<std::vector<int>> prefixes(int depth);

    template <class F>
    uint64_t run_prefix(const std::vector<int>& prefix, F&& visit) {
        load_prefix(prefix);
        return run_from(static_cast<int>(prefix.size()), visit);
    }

    int num_vertices() const { return n_; }

private:
    void load_prefix(const std::vector<int>& prefix);
    bool viable(int part) const;
    bool all_viable() const;

    template <class F>
    uint64_t run_from(int depth, F& visit) {
        count_ = 0;
        stopped_ = false;
        descend(depth, visit);
        return count_;
    }

    template <class F>
    void descend(int i, F& visit) {
        if (stopped_) return;
        if (i == n_) {
            ++count_;
            if (!visit(num_parts_, part_mask_.data(), rgs_.data())) stopped_ = true;
            return;
        }
        future_ &= ~(uint64_t{1} << i);
        int limit = num_parts_;  // may open exactly one new part
        for (int b = 0; b <= limit && !stopped_; ++b) {
            bool fresh = (b == num_parts_);
            rgs_[i] = b;
            part_mask_[b] |= (uint64_t{1} << i);
            char prev_connected = part_connected_[b];
            if (fresh)
                part_connected_[b] = 1;  // singleton
            else if (prev_connected)
                part_connected_[b] = (adj_[i] & part_mask_[b]) != 0 ? 1 : 0;
            else
                part_connected_[b] = connected_mask(part_mask_[b]) ? 1 : 0;
            if (fresh) ++num_parts_;

            if (all_viable()) descend(i + 1, visit);

            if (fresh) --num_parts_;
            part_connected_[b] = prev_connected;
            part_mask_[b] &= ~(uint64_t{1} << i);
        }
        future_ |= (uint64_t{1} << i);
    }

    bool connected_mask(uint64_t mask) const;

    const Graph& g_;
    int n_;
    std::vector<uint64_t> adj_;        // adjacency masks, n <= 64
    std::vector<uint64_t> part_mask_;  // one per open part
    std::vector<char> part_connected_;
    std::vector<int> rgs_;
    uint64_t future_ = 0;  // vertices not yet assigned
    int num_parts_ = 0;
    uint64_t count_ = 0;
    bool stopped_ = false;
};

// Materialized convenience wrapper; deterministic RGS order.
std::vector<Partition> enumerate_connected_partitions(const Graph& g, int cap = kDefaultEnumCap);

uint64_t count_connected_partitions(const Graph& g, int cap = kDefaultEnumCap);

Partition partition_from_masks(const Graph& g, int num_parts, const uint64_t* part_masks);

}  // namespace chp

#endif
