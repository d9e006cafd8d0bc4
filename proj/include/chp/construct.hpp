#ifndef CHP_CONSTRUCT_HPP
#define CHP_CONSTRUCT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chp/decomposition.hpp"
#include "chp/graph.hpp"

namespace chp {

constexpr long long kDefaultVertexCap = 1'000'000;

// s(k,r) = (k^3 - k)/3 + (r-1)k + 4; the bag-size bound of the chordal-family
// construction. Integer exactly: k^3 - k is divisible by 3.
long long s_bound(int k, int r);

// t(k,r) = 2(k^3 - k)/3 + (r-1)k + 6; bag-size bound of the perfect family.
long long t_bound(int k, int r);

enum class FamilyKind { chordal, perfect, general };

// Largest k whose construction fits tree-width t-1: floor((3t-11)^(1/3)) for
// the chordal family (t >= 4), floor((3t/2-8)^(1/3)) for the perfect family
// (t >= 6). Exact integer arithmetic; the guarantee bound(k,1) <= t is checked
// before returning.
int theorem_clique_order(FamilyKind family, long long t);

// m pairwise-disjoint q-cliques whose union induces K_{qm}.
struct CliqueFamily {
    std::vector<VertexSet> cliques;  // sorted by minimum member id
    VertexSet union_set;
};

// Every unordered family exactly once: each (qm)-clique contributes its
// partitions into m blocks of size q, in canonical order.
std::vector<CliqueFamily> enumerate_clique_families(const Graph& g, int q, int m);

void for_each_clique_family(const Graph& g, int q, int m,
                            const std::function<bool(const CliqueFamily&)>& visit);

// Families-per-clique multiplier: (qm)! / ((q!)^m m!), saturating at LLONG_MAX.
long long clique_family_multiplier(int q, int m);

struct ConstructionParams {
    FamilyKind family;
    int k = 0;
    int r = 0;
    int t = 0;  // general family only
};

struct Attachment {
    enum class Kind { gadget, copy };
    Kind kind;
    std::vector<VertexSet> family_cliques;  // base-graph vertex ids
    VertexSet attached_vertices;            // the new gadget/copy vertices
};

struct ConstructionResult {
    Graph graph;
    std::optional<TreeDecomposition> decomposition;  // absent for the general family
    ConstructionParams params;
    long long predicted_size = 0;
    std::vector<Attachment> attachment_log;
};

struct BuildOptions {
    long long vertex_cap = kDefaultVertexCap;
    bool force = false;  // build even past the cap
};

// The recursive counterexample families. Sizes are predicted from the closed
// form before any vertex is materialized; a predicted blow-up is a refusal
// carrying the predicted count.
ConstructionResult build_chordal(int k, int r, const BuildOptions& opts = {});
ConstructionResult build_perfect(int k, int r, const BuildOptions& opts = {});
ConstructionResult build_general(int k, int t, int r, const BuildOptions& opts = {});

}  // namespace chp

#endif
