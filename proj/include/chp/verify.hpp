#ifndef CHP_VERIFY_HPP
#define CHP_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chp/graph.hpp"
#include "chp/partition.hpp"

namespace chp {

constexpr int kDefaultGeneralTCap = 4;
constexpr int kReportSchemaVersion = 1;

// One partition that defeated the lemma's disjunction. outcome3 is used by the
// general lemma only.
struct FailureRecord {
    Partition partition;
    std::string quotient_class;  // "chordal" | "perfect" | "neither"
    bool outcome1 = false;
    bool outcome2 = false;
    bool outcome3 = false;
};

struct VerificationReport {
    std::string lemma;  // "chordal" | "perfect" | "general"
    int k = 0, r = 0, t = 0;
    int graph_n = 0;
    long long graph_m = 0;
    uint64_t partition_count = 0;   // connected partitions enumerated
    uint64_t filtered_count = 0;    // with quotient in the lemma's class
    uint64_t outcome1_count = 0;    // among filtered
    uint64_t outcome2_count = 0;
    uint64_t outcome3_count = 0;
    std::vector<FailureRecord> failures;  // sorted, deterministic
    double wall_seconds = 0;
    int workers = 1;

    bool certified() const { return failures.empty(); }
};

struct VerifyOptions {
    int enum_cap = kDefaultEnumCap;
    int workers = 1;
    std::ostream* ndjson = nullptr;  // failure stream; every partition with stream_all
    bool stream_all = false;
};

// For every connected partition whose quotient is chordal: a K_{kr} meeting r
// parts in k vertices each, or a part containing K_{k+1}. Anything else is a
// failure with a replayable witness.
VerificationReport verify_chordal_lemma(const Graph& g, int k, int r,
                                        const VerifyOptions& opts = {});

// Same disjunction over partitions with perfect quotient.
VerificationReport verify_perfect_lemma(const Graph& g, int k, int r,
                                        const VerifyOptions& opts = {});

// Over all connected partitions: outcome (1) as above, or (2) the quotient
// contains every t-vertex graph, or (3) a part contains K_{k+1}.
VerificationReport verify_general_lemma(const Graph& g, int k, int t, int r,
                                        const VerifyOptions& opts = {});

// All t-vertex graphs up to isomorphism, deterministic order (t <= cap).
std::vector<Graph> all_graphs_up_to_iso(int t, int cap = kDefaultGeneralTCap);

// --- partition search --------------------------------------------------------

enum class QuotientFilter { chordal, perfect, any };

enum class PartPredicate {
    bipartite,
    clique_free,  // no K_k inside a part; arg = k
    max_size,     // |part| <= arg
};

struct SearchResult {
    std::optional<Partition> found;
    uint64_t examined = 0;  // candidates inspected (exhaustive when not found)
};

// First connected partition in enumeration order whose quotient lies in the
// class and whose parts all satisfy the predicate.
SearchResult search_partition(const Graph& g, QuotientFilter filter, PartPredicate predicate,
                              int predicate_arg = 0, int enum_cap = kDefaultEnumCap);

// NDJSON / JSON encodings used by the CLI and streamed during verification.
std::string failure_to_ndjson(const FailureRecord& record, const std::string& lemma);
std::string report_to_json(const VerificationReport& report);

}  // namespace chp

#endif
