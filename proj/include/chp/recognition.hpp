#ifndef CHP_RECOGNITION_HPP
#define CHP_RECOGNITION_HPP

#include <optional>
#include <vector>

#include "chp/graph.hpp"

namespace chp {

constexpr int kDefaultHoleCap = 14;
constexpr int kDefaultPerfectCap = 12;
constexpr int kDefaultChromaticCap = 10;
constexpr long long kDefaultCliqueBudget = 50'000'000;

// Chordality certificate: a perfect elimination ordering when chordal, an
// induced cycle of length >= 4 (in cycle order) when not. Certificates are
// re-verified before being returned.
struct ChordalityResult {
    bool chordal = false;
    std::vector<int> elimination_order;
    std::vector<int> hole;
};

// Maximum-cardinality search (ties: max label, then min id) plus elimination
// check. No size cap; runs on any graph.
ChordalityResult is_chordal(const Graph& g);

// Shortest induced cycle of length >= min_len, in cycle order, or nullopt.
std::optional<std::vector<int>> find_induced_long_cycle(const Graph& g, int min_len,
                                                        int cap = kDefaultHoleCap);

// Perfection at desk scale: no induced odd cycle of length >= 5 in G or in its
// complement. The certificate names the hole and whether it lives in the
// complement.
struct PerfectionResult {
    bool perfect = false;
    bool certificate_in_complement = false;
    std::vector<int> hole;
};

PerfectionResult is_perfect_small(const Graph& g, int cap = kDefaultPerfectCap);

// Exact chromatic number, branch and bound between the clique lower bound and
// a greedy upper bound.
int chromatic_number(const Graph& g, int cap = kDefaultChromaticCap);

// Exact maximum clique size, bitset branch and bound with a greedy-coloring
// bound. The budget counts search-tree expansions.
int max_clique_size(const Graph& g, long long budget = kDefaultCliqueBudget);

}  // namespace chp

#endif
