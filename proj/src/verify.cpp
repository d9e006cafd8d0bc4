#include "chp/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "chp/graph_io.hpp"
#include "chp/recognition.hpp"

namespace chp {

namespace {

// Labeled quotient key: part count plus upper-triangle adjacency bits. Parts
// are canonically ordered (by minimum member), so equal keys mean equal
// labeled quotients and classification can be memoized across partitions.
struct QuotientKey {
    uint64_t lo = 0, hi = 0;
    uint32_t parts = 0;
    bool operator==(const QuotientKey&) const = default;
};

struct QuotientKeyHash {
    size_t operator()(const QuotientKey& k) const {
        uint64_t h = k.lo * 0x9e3779b97f4a7c15ULL;
        h ^= k.hi + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= k.parts + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

constexpr int kMaxQuotientParts = 16;  // C(16,2) = 120 bits fit the key

struct QuotientClass {
    bool chordal = false;
    bool perfect = false;
    bool contains_all = false;  // general lemma: every t-vertex graph embeds
};

Graph quotient_from_key(const QuotientKey& key) {
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int j = 1; j < static_cast<int>(key.parts); ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            uint64_t word = bit < 64 ? key.lo : key.hi;
            if ((word >> (bit & 63)) & 1) edges.emplace_back(i, j);
        }
    }
    return Graph::make(static_cast<int>(key.parts), edges);
}

const char* class_string(const QuotientClass& c) {
    if (c.chordal) return "chordal";
    if (c.perfect) return "perfect";
    return "neither";
}

enum class Lemma { chordal, perfect, general };

struct EngineConfig {
    Lemma lemma;
    int k = 0, r = 0, t = 0;
};

// Shared memoized classifier. Lookups are cheap; misses recompute outside the
// lock (classification is pure, duplicated work is harmless).
class QuotientClassifier {
public:
    QuotientClassifier(bool need_perfect, const std::vector<Graph>* catalog)
        : need_perfect_(need_perfect), catalog_(catalog) {}

    QuotientClass classify(const QuotientKey& key) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Graph q = quotient_from_key(key);
        QuotientClass qc;
        qc.chordal = is_chordal(q).chordal;
        if (need_perfect_)
            qc.perfect = qc.chordal || is_perfect_small(q, kMaxQuotientParts).perfect;
        if (catalog_) {
            qc.contains_all = true;
            for (const Graph& h : *catalog_) {
                if (!contains_induced(q, h, kDefaultGeneralTCap + 1)) {
                    qc.contains_all = false;
                    break;
                }
            }
        }
        std::lock_guard<std::mutex> lock(mutex_);
        memo_.emplace(key, qc);
        return qc;
    }

private:
    bool need_perfect_;
    const std::vector<Graph>* catalog_;
    std::mutex mutex_;
    std::unordered_map<QuotientKey, QuotientClass, QuotientKeyHash> memo_;
};

struct WorkerTally {
    uint64_t total = 0;
    uint64_t filtered = 0;
    uint64_t o1 = 0, o2 = 0, o3 = 0;
    std::vector<FailureRecord> failures;
};

// Per-partition evaluation state reused across visits.
struct Evaluator {
    const Graph& g;
    const EngineConfig& cfg;
    const std::vector<uint64_t>& spread_cliques;  // K_{kr} masks
    const std::vector<uint64_t>& part_cliques;    // K_{k+1} masks
    std::vector<uint64_t> adj;                    // vertex adjacency masks

    explicit Evaluator(const Graph& graph, const EngineConfig& config,
                       const std::vector<uint64_t>& spread, const std::vector<uint64_t>& parts)
        : g(graph), cfg(config), spread_cliques(spread), part_cliques(parts) {
        adj.assign(g.num_vertices(), 0);
        for (auto [u, v] : g.edges()) {
            adj[u] |= uint64_t{1} << v;
            adj[v] |= uint64_t{1} << u;
        }
    }

    QuotientKey key_of(int num_parts, const uint64_t* masks) const {
        QuotientKey key;
        key.parts = static_cast<uint32_t>(num_parts);
        std::array<uint64_t, 16> part_adj{};
        for (int b = 0; b < num_parts; ++b) {
            uint64_t acc = 0, m = masks[b];
            while (m) {
                acc |= adj[std::countr_zero(m)];
                m &= m - 1;
            }
            part_adj[b] = acc;
        }
        int bit = 0;
        for (int j = 1; j < num_parts; ++j) {
            for (int i = 0; i < j; ++i, ++bit) {
                if (part_adj[i] & masks[j]) {
                    if (bit < 64) key.lo |= uint64_t{1} << bit;
                    else key.hi |= uint64_t{1} << (bit - 64);
                }
            }
        }
        return key;
    }

    bool spread_holds(int num_parts, const uint64_t* masks) const {
        for (uint64_t cm : spread_cliques) {
            int touched = 0;
            bool ok = true;
            for (int b = 0; b < num_parts && ok; ++b) {
                int hit = std::popcount(cm & masks[b]);
                if (hit == 0) continue;
                if (hit != cfg.k) ok = false;
                else ++touched;
            }
            if (ok && touched == cfg.r) return true;
        }
        return false;
    }

    bool part_clique_holds(int num_parts, const uint64_t* masks) const {
        for (uint64_t cm : part_cliques) {
            for (int b = 0; b < num_parts; ++b) {
                if ((cm & ~masks[b]) == 0) return true;
            }
        }
        return false;
    }
};

}  // namespace

std::vector<Graph> all_graphs_up_to_iso(int t, int cap) {
    if (t < 1) throw GraphError("all_graphs_up_to_iso: t must be >= 1");
    if (t > cap) throw CapExceeded("all_graphs_up_to_iso refused", t, cap);
    std::vector<Graph> out;
    int pairs = t * (t - 1) / 2;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
        std::vector<std::pair<int, int>> edges;
        int bit = 0;
        for (int j = 1; j < t; ++j) {
            for (int i = 0; i < j; ++i, ++bit) {
                if ((mask >> bit) & 1) edges.emplace_back(i, j);
            }
        }
        Graph g = Graph::make(t, edges);
        bool fresh = true;
        for (const Graph& seen : out) {
            if (are_isomorphic(g, seen)) {
                fresh = false;
                break;
            }
        }
        if (fresh) out.push_back(std::move(g));
    }
    return out;
}

std::string failure_to_ndjson(const FailureRecord& record, const std::string& lemma) {
    nlohmann::json j;
    j["partition"] = record.partition.parts;
    j["quotient_class"] = record.quotient_class;
    j["outcome1"] = record.outcome1;
    j["outcome2"] = record.outcome2;
    if (lemma == "general") j["outcome3"] = record.outcome3;
    return j.dump();
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["lemma"] = report.lemma;
    j["params"]["k"] = report.k;
    j["params"]["r"] = report.r;
    if (report.lemma == "general") j["params"]["t"] = report.t;
    j["graph"]["n"] = report.graph_n;
    j["graph"]["m"] = report.graph_m;
    j["partition_count"] = report.partition_count;
    j["filtered_count"] = report.filtered_count;
    j["tallies"]["outcome1"] = report.outcome1_count;
    j["tallies"]["outcome2"] = report.outcome2_count;
    if (report.lemma == "general") j["tallies"]["outcome3"] = report.outcome3_count;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : report.failures)
        j["failures"].push_back(nlohmann::json::parse(failure_to_ndjson(f, report.lemma)));
    j["certified"] = report.certified();
    j["wall_seconds"] = report.wall_seconds;
    j["workers"] = report.workers;
    return j.dump(2);
}

namespace {

VerificationReport run_engine(const Graph& g, const EngineConfig& cfg,
                              const VerifyOptions& opts) {
    auto start = std::chrono::steady_clock::now();

    if (cfg.k < 1 || cfg.r < 1) throw GraphError("lemma parameters k and r must be >= 1");
    if (g.num_vertices() > opts.enum_cap)
        throw CapExceeded("verification enumeration refused", g.num_vertices(), opts.enum_cap);
    if (g.num_vertices() > kMaxQuotientParts)
        throw CapExceeded("verification quotient keys support at most 16 parts",
                          g.num_vertices(), kMaxQuotientParts);

    bool need_perfect = cfg.lemma != Lemma::chordal || opts.stream_all;

    std::vector<Graph> catalog;
    if (cfg.lemma == Lemma::general) catalog = all_graphs_up_to_iso(cfg.t);
    QuotientClassifier classifier(need_perfect,
                                  cfg.lemma == Lemma::general ? &catalog : nullptr);

    // Outcome cliques are fixed per run; enumerate once as masks.
    std::vector<uint64_t> spread_cliques, part_cliques;
    long long kr = static_cast<long long>(cfg.k) * cfg.r;
    if (kr <= g.num_vertices()) {
        for_each_clique(g, static_cast<int>(kr), [&](const VertexSet& c) {
            uint64_t m = 0;
            for (int v : c) m |= uint64_t{1} << v;
            spread_cliques.push_back(m);
            return true;
        });
    }
    if (cfg.k + 1 <= g.num_vertices()) {
        for_each_clique(g, cfg.k + 1, [&](const VertexSet& c) {
            uint64_t m = 0;
            for (int v : c) m |= uint64_t{1} << v;
            part_cliques.push_back(m);
            return true;
        });
    }

    Evaluator eval(g, cfg, spread_cliques, part_cliques);

    int workers = std::max(1, opts.workers);
    std::mutex stream_mutex;

    std::string lemma_name = cfg.lemma == Lemma::chordal   ? "chordal"
                             : cfg.lemma == Lemma::perfect ? "perfect"
                                                           : "general";

    auto visit_with = [&](WorkerTally* tally) {
        return [&, tally](int num_parts, const uint64_t* masks, const int*) {
            ++tally->total;
            QuotientKey key = eval.key_of(num_parts, masks);
            QuotientClass qc = classifier.classify(key);

            bool in_class = cfg.lemma == Lemma::chordal   ? qc.chordal
                            : cfg.lemma == Lemma::perfect ? qc.perfect
                                                          : true;
            bool o1 = false, o2 = false, o3 = false;
            if (in_class || opts.stream_all) {
                o1 = eval.spread_holds(num_parts, masks);
                if (cfg.lemma == Lemma::general) {
                    o2 = qc.contains_all;
                    o3 = eval.part_clique_holds(num_parts, masks);
                } else {
                    o2 = eval.part_clique_holds(num_parts, masks);
                }
            }
            bool holds = o1 || o2 || o3;
            if (in_class) {
                ++tally->filtered;
                if (o1) ++tally->o1;
                if (o2) ++tally->o2;
                if (o3) ++tally->o3;
            }
            bool failure = in_class && !holds;
            if (failure || opts.stream_all) {
                FailureRecord rec{partition_from_masks(g, num_parts, masks), class_string(qc),
                                  o1, o2, o3};
                if (opts.ndjson) {
                    std::string line = failure_to_ndjson(rec, lemma_name);
                    std::lock_guard<std::mutex> lock(stream_mutex);
                    (*opts.ndjson) << line << "\n";
                    opts.ndjson->flush();
                }
                if (failure) tally->failures.push_back(std::move(rec));
            }
            return true;
        };
    };

    std::vector<WorkerTally> tallies(workers);
    if (workers == 1) {
        ConnectedPartitionEnumerator en(g, opts.enum_cap);
        en.run(visit_with(&tallies[0]));
    } else {
        // Split the RGS space at a fixed depth; workers pull disjoint prefixes.
        ConnectedPartitionEnumerator splitter(g, opts.enum_cap);
        auto prefixes = splitter.prefixes(std::min(g.num_vertices(), 6));
        std::atomic<size_t> next{0};
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                ConnectedPartitionEnumerator en(g, opts.enum_cap);
                auto visit = visit_with(&tallies[w]);
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= prefixes.size()) break;
                    en.run_prefix(prefixes[i], visit);
                }
            });
        }
        for (auto& t : threads) t.join();
    }

    VerificationReport report;
    report.lemma = lemma_name;
    report.k = cfg.k;
    report.r = cfg.r;
    report.t = cfg.t;
    report.graph_n = g.num_vertices();
    report.graph_m = g.num_edges();
    report.workers = workers;
    for (auto& t : tallies) {
        report.partition_count += t.total;
        report.filtered_count += t.filtered;
        report.outcome1_count += t.o1;
        report.outcome2_count += t.o2;
        report.outcome3_count += t.o3;
        for (auto& f : t.failures) report.failures.push_back(std::move(f));
    }
    // Deterministic regardless of worker interleaving.
    std::sort(report.failures.begin(), report.failures.end(),
              [](const FailureRecord& a, const FailureRecord& b) {
                  return a.partition.parts < b.partition.parts;
              });
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace

VerificationReport verify_chordal_lemma(const Graph& g, int k, int r, const VerifyOptions& opts) {
    return run_engine(g, {Lemma::chordal, k, r, 0}, opts);
}

VerificationReport verify_perfect_lemma(const Graph& g, int k, int r, const VerifyOptions& opts) {
    return run_engine(g, {Lemma::perfect, k, r, 0}, opts);
}

VerificationReport verify_general_lemma(const Graph& g, int k, int t, int r,
                                        const VerifyOptions& opts) {
    if (t < 1) throw GraphError("lemma parameter t must be >= 1");
    return run_engine(g, {Lemma::general, k, r, t}, opts);
}

SearchResult search_partition(const Graph& g, QuotientFilter filter, PartPredicate predicate,
                              int predicate_arg, int enum_cap) {
    if (g.num_vertices() > kMaxQuotientParts)
        throw CapExceeded("search_partition quotient keys support at most 16 parts",
                          g.num_vertices(), kMaxQuotientParts);
    if (predicate == PartPredicate::clique_free && predicate_arg < 1)
        throw GraphError("clique_free predicate needs k >= 1");
    if (predicate == PartPredicate::max_size && predicate_arg < 1)
        throw GraphError("max_size predicate needs m >= 1");

    QuotientClassifier classifier(filter == QuotientFilter::perfect, nullptr);
    EngineConfig cfg{Lemma::chordal, 1, 1, 0};
    std::vector<uint64_t> no_cliques;
    Evaluator eval(g, cfg, no_cliques, no_cliques);

    const std::vector<uint64_t>& adj = eval.adj;
    auto part_bipartite = [&](uint64_t mask) {
        // BFS 2-coloring, layer by layer, then verify both sides independent.
        uint64_t color0 = 0, color1 = 0, colored = 0;
        uint64_t rest = mask;
        while (rest) {
            uint64_t frontier = uint64_t{1} << std::countr_zero(rest);
            color0 |= frontier;
            colored |= frontier;
            bool next_is_one = true;
            while (frontier) {
                uint64_t next = 0;
                uint64_t f = frontier;
                while (f) {
                    int v = std::countr_zero(f);
                    f &= f - 1;
                    next |= adj[v] & mask & ~colored;
                }
                (next_is_one ? color1 : color0) |= next;
                colored |= next;
                next_is_one = !next_is_one;
                frontier = next;
            }
            rest = mask & ~colored;
        }
        for (uint64_t side_mask : {color0, color1}) {
            uint64_t m = side_mask;
            while (m) {
                int v = std::countr_zero(m);
                m &= m - 1;
                if (adj[v] & side_mask) return false;
            }
        }
        return true;
    };

    auto part_ok = [&](uint64_t mask) {
        switch (predicate) {
            case PartPredicate::bipartite:
                return part_bipartite(mask);
            case PartPredicate::clique_free: {
                VertexSet vs;
                uint64_t m = mask;
                while (m) {
                    vs.push_back(std::countr_zero(m));
                    m &= m - 1;
                }
                return !find_clique_within(g, vs, predicate_arg).has_value();
            }
            case PartPredicate::max_size:
                return std::popcount(mask) <= predicate_arg;
        }
        return false;
    };

    SearchResult result;
    ConnectedPartitionEnumerator en(g, enum_cap);
    en.run([&](int num_parts, const uint64_t* masks, const int*) {
        ++result.examined;
        if (filter != QuotientFilter::any) {
            QuotientClass qc = classifier.classify(eval.key_of(num_parts, masks));
            bool in_class = filter == QuotientFilter::chordal ? qc.chordal : qc.perfect;
            if (!in_class) return true;
        }
        for (int b = 0; b < num_parts; ++b) {
            if (!part_ok(masks[b])) return true;
        }
        result.found = partition_from_masks(g, num_parts, masks);
        return false;
    });
    return result;
}

}  // namespace chp
