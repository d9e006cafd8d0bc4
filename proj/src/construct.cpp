#include "chp/construct.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace chp {

namespace {

void require_positive(int value, const char* name) {
    if (value < 1) throw GraphError(std::string(name) + " must be >= 1");
    if (value > 1'000'000)
        throw GraphError(std::string(name) + " implausibly large (max 10^6)");
}

long long sat_add(long long a, long long b) {
    if (a > LLONG_MAX - b) return LLONG_MAX;
    return a + b;
}

long long sat_mul(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    if (a > LLONG_MAX / b) return LLONG_MAX;
    return a * b;
}

}  // namespace

long long s_bound(int k, int r) {
    require_positive(k, "k");
    require_positive(r, "r");
    long long kk = k;
    return (kk * kk * kk - kk) / 3 + static_cast<long long>(r - 1) * kk + 4;
}

long long t_bound(int k, int r) {
    require_positive(k, "k");
    require_positive(r, "r");
    long long kk = k;
    return 2 * (kk * kk * kk - kk) / 3 + static_cast<long long>(r - 1) * kk + 6;
}

int theorem_clique_order(FamilyKind family, long long t) {
    if (family == FamilyKind::general)
        throw GraphError("theorem_clique_order applies to the chordal and perfect families");
    long long min_t = family == FamilyKind::chordal ? 4 : 6;
    if (t < min_t)
        throw GraphError("theorem_clique_order: t must be >= " + std::to_string(min_t));
    if (t > 1'000'000'000'000'000LL)
        throw GraphError("theorem_clique_order: t implausibly large (max 10^15)");

    // Largest k with k^3 <= 3t-11 (chordal) resp. 2k^3 <= 3t-16 (perfect).
    auto fits = [&](long long k) {
        long long cube = k * k * k;
        return family == FamilyKind::chordal ? cube <= 3 * t - 11 : 2 * cube <= 3 * t - 16;
    };
    long long lo = 1, hi = 2'000'000;
    while (lo < hi) {
        long long mid = (lo + hi + 1) / 2;
        if (fits(mid)) lo = mid;
        else hi = mid - 1;
    }
    int k = static_cast<int>(lo);

    long long guarantee = family == FamilyKind::chordal ? s_bound(k, 1) : t_bound(k, 1);
    if (guarantee > t)
        throw std::logic_error("internal error: clique-order guarantee violated");
    return k;
}

// --- clique families ---------------------------------------------------------

namespace {

// Partitions of `pool` (sorted) into blocks of size q, blocks forced to carry
// the minimum remaining element, which yields each unordered family once with
// blocks already in canonical order.
bool split_into_blocks(const Graph& g, std::vector<int>& pool, int q,
                       std::vector<VertexSet>& blocks,
                       const std::function<bool(const std::vector<VertexSet>&)>& visit) {
    if (pool.empty()) return visit(blocks);
    int head = pool.front();
    std::vector<int> rest(pool.begin() + 1, pool.end());
    // Choose q-1 partners for the head, in lexicographic order.
    std::vector<int> pick(q - 1);
    auto choose = [&](auto&& self, int start, int depth) -> bool {
        if (depth == q - 1) {
            VertexSet block{head};
            block.insert(block.end(), pick.begin(), pick.end());
            std::vector<int> remaining;
            remaining.reserve(rest.size() - (q - 1));
            size_t pi = 0;
            for (int v : rest) {
                if (pi < pick.size() && pick[pi] == v) {
                    ++pi;
                    continue;
                }
                remaining.push_back(v);
            }
            blocks.push_back(std::move(block));
            bool keep = split_into_blocks(g, remaining, q, blocks, visit);
            blocks.pop_back();
            return keep;
        }
        for (int i = start; i < static_cast<int>(rest.size()); ++i) {
            pick[depth] = rest[i];
            if (!self(self, i + 1, depth + 1)) return false;
        }
        return true;
    };
    return choose(choose, 0, 0);
}

}  // namespace

void for_each_clique_family(const Graph& g, int q, int m,
                            const std::function<bool(const CliqueFamily&)>& visit) {
    require_positive(q, "q");
    require_positive(m, "m");
    long long total = static_cast<long long>(q) * m;
    if (total > g.num_vertices()) return;
    for_each_clique(g, static_cast<int>(total), [&](const VertexSet& whole) {
        // Any split of a clique's vertex set into q-blocks is a family of
        // q-cliques; the union is the clique itself.
        std::vector<int> pool = whole;
        std::vector<VertexSet> blocks;
        return split_into_blocks(g, pool, q, blocks,
                                 [&](const std::vector<VertexSet>& blks) {
                                     return visit(CliqueFamily{blks, whole});
                                 });
    });
}

std::vector<CliqueFamily> enumerate_clique_families(const Graph& g, int q, int m) {
    std::vector<CliqueFamily> out;
    for_each_clique_family(g, q, m, [&](const CliqueFamily& fam) {
        out.push_back(fam);
        return true;
    });
    return out;
}

long long clique_family_multiplier(int q, int m) {
    require_positive(q, "q");
    require_positive(m, "m");
    // count(q,m) = C(qm-1, q-1) * count(q, m-1): the block holding the minimum
    // element picks its q-1 partners.
    long long result = 1;
    for (int blocks_left = m; blocks_left >= 2; --blocks_left) {
        long long pool = static_cast<long long>(q) * blocks_left - 1;
        long long choose = 1;
        for (int i = 1; i <= q - 1; ++i) {
            choose = sat_mul(choose, pool - i + 1) / i;  // exact: running binomial
        }
        result = sat_mul(result, choose);
    }
    return result;
}

// --- builders ----------------------------------------------------------------

namespace {

struct Pieces {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels;
};

Pieces pieces_from(const Graph& g, const std::string& prefix) {
    Pieces p;
    p.n = g.num_vertices();
    p.edges = g.edges();
    p.labels.reserve(p.n);
    for (int v = 0; v < p.n; ++v) {
        std::string base = g.labels().empty() ? std::to_string(v) : g.labels()[v];
        p.labels.push_back(prefix.empty() ? base : prefix + "/" + base);
    }
    return p;
}

// Appends a disjoint shifted copy; returns the id offset.
int append_copy(Pieces& dst, const Graph& src, const std::string& prefix) {
    int offset = dst.n;
    for (auto [u, v] : src.edges()) dst.edges.emplace_back(offset + u, offset + v);
    for (int v = 0; v < src.num_vertices(); ++v) {
        std::string base = src.labels().empty() ? std::to_string(v) : src.labels()[v];
        dst.labels.push_back(prefix + "/" + base);
    }
    dst.n += src.num_vertices();
    return offset;
}

TreeDecomposition shift_decomposition(const TreeDecomposition& td, int offset) {
    TreeDecomposition out = td;
    out.graph_n = td.graph_n + offset;
    for (auto& bag : out.bags) {
        for (int& v : bag) v += offset;
    }
    return out;
}

TreeDecomposition prefix_node_labels(TreeDecomposition td, const std::string& prefix) {
    if (td.node_labels.empty()) {
        td.node_labels.resize(td.num_nodes());
        for (int i = 0; i < td.num_nodes(); ++i) td.node_labels[i] = std::to_string(i);
    }
    for (auto& l : td.node_labels) l = prefix + "/" + l;
    return td;
}

ConstructionResult single_vertex_result(ConstructionParams params, bool with_decomposition) {
    ConstructionResult out;
    out.graph = Graph::make(1, {}, {"v"});
    if (with_decomposition) {
        TreeDecomposition td;
        td.graph_n = 1;
        td.bags = {{0}};
        td.node_labels = {"root"};
        out.decomposition = std::move(td);
    }
    out.params = params;
    out.predicted_size = 1;
    return out;
}

void check_cap(long long predicted, const BuildOptions& opts, const std::string& what) {
    if (!opts.force && predicted > opts.vertex_cap)
        throw CapExceeded(what + ": predicted vertex count exceeds cap", predicted,
                          opts.vertex_cap);
}

// Shared (k,r) -> (k,r+1) step: one disjoint copy of B joined completely to
// each k-clique of A.
ConstructionResult copy_step(const ConstructionResult& a, const ConstructionResult& b, int k,
                             ConstructionParams params, const BuildOptions& opts,
                             const std::string& what) {
    std::vector<VertexSet> cliques = enumerate_cliques(a.graph, k);
    long long predicted =
        sat_add(a.graph.num_vertices(),
                sat_mul(static_cast<long long>(cliques.size()), b.graph.num_vertices()));
    check_cap(predicted, opts, what);

    ConstructionResult out;
    out.params = params;
    out.predicted_size = predicted;
    Pieces p = pieces_from(a.graph, "A");
    std::optional<TreeDecomposition> td;
    if (a.decomposition) td = prefix_node_labels(*a.decomposition, "A");

    for (size_t j = 0; j < cliques.size(); ++j) {
        const VertexSet& c = cliques[j];
        std::string tag = "c" + std::to_string(j);
        int offset = append_copy(p, b.graph, tag);
        for (int cv : c) {
            for (int bv = 0; bv < b.graph.num_vertices(); ++bv)
                p.edges.emplace_back(cv, offset + bv);
        }
        if (td && b.decomposition)
            td = attach_copy(*td, shift_decomposition(*b.decomposition, offset), c, tag);
        VertexSet attached(b.graph.num_vertices());
        for (int i = 0; i < b.graph.num_vertices(); ++i) attached[i] = offset + i;
        out.attachment_log.push_back({Attachment::Kind::copy, {c}, std::move(attached)});
    }

    out.graph = Graph::make(p.n, p.edges, std::move(p.labels));
    out.decomposition = std::move(td);
    return out;
}

void check_construction(const ConstructionResult& r, long long bag_bound) {
    if (r.graph.num_vertices() != r.predicted_size)
        throw std::logic_error("internal error: construction size differs from prediction");
    if (r.decomposition) {
        if (!validate(r.graph, *r.decomposition).empty())
            throw std::logic_error("internal error: construction emitted an invalid decomposition");
        if (r.decomposition->max_bag_size() > bag_bound)
            throw std::logic_error("internal error: construction exceeded its bag bound");
    }
}

}  // namespace

ConstructionResult build_chordal(int k, int r, const BuildOptions& opts) {
    require_positive(k, "k");
    require_positive(r, "r");
    ConstructionParams params{FamilyKind::chordal, k, r, 0};

    ConstructionResult out;
    if (k == 1 && r == 1) {
        out = single_vertex_result(params, true);
    } else if (r >= 2) {
        ConstructionResult a = build_chordal(k, 1, opts);
        ConstructionResult b = build_chordal(k, r - 1, opts);
        out = copy_step(a, b, k, params, opts, "build_chordal");
    } else {
        // (k,1) for k >= 2: one K_{k+1} gadget per family of k+1 disjoint
        // (k-1)-cliques with complete union; gadget vertex i sees clique i.
        ConstructionResult a = build_chordal(k - 1, k + 1, opts);
        int q = k - 1, m = k + 1;

        long long clique_count = 0;
        for_each_clique(a.graph, q * m, [&](const VertexSet&) {
            ++clique_count;
            return true;
        });
        long long families = sat_mul(clique_count, clique_family_multiplier(q, m));
        long long predicted =
            sat_add(a.graph.num_vertices(), sat_mul(families, static_cast<long long>(m)));
        check_cap(predicted, opts, "build_chordal");

        out.params = params;
        out.predicted_size = predicted;
        Pieces p = pieces_from(a.graph, "A");
        TreeDecomposition td = prefix_node_labels(*a.decomposition, "A");

        long long f = 0;
        for_each_clique_family(a.graph, q, m, [&](const CliqueFamily& fam) {
            std::string tag = "fam" + std::to_string(f);
            int offset = p.n;
            VertexSet gadget(m);
            for (int i = 0; i < m; ++i) {
                gadget[i] = offset + i;
                p.labels.push_back(tag + "/gadget/" + std::to_string(i));
            }
            p.n += m;
            for (int i = 0; i < m; ++i) {
                for (int j = i + 1; j < m; ++j) p.edges.emplace_back(gadget[i], gadget[j]);
                for (int cv : fam.cliques[i]) p.edges.emplace_back(gadget[i], cv);
            }
            td = attach_gadget_bag(td, gadget, fam.union_set, tag);
            out.attachment_log.push_back({Attachment::Kind::gadget, fam.cliques, gadget});
            ++f;
            return true;
        });

        out.graph = Graph::make(p.n, p.edges, std::move(p.labels));
        out.decomposition = std::move(td);
    }

    check_construction(out, s_bound(k, r));
    return out;
}

ConstructionResult build_perfect(int k, int r, const BuildOptions& opts) {
    require_positive(k, "k");
    require_positive(r, "r");
    ConstructionParams params{FamilyKind::perfect, k, r, 0};

    ConstructionResult out;
    if (k == 1 && r == 1) {
        out = single_vertex_result(params, true);
    } else if (r >= 2) {
        ConstructionResult a = build_perfect(k, 1, opts);
        ConstructionResult b = build_perfect(k, r - 1, opts);
        out = copy_step(a, b, k, params, opts, "build_perfect");
    } else {
        // (k,1) for k >= 2: the gadget is two K_{k+1} sharing one vertex
        // (2k+1 vertices); vertex i of the gadget sees clique i of a family of
        // 2k+1 disjoint (k-1)-cliques with complete union. The shared vertex
        // is slot k: last of the first copy, first of the second.
        ConstructionResult a = build_perfect(k - 1, 2 * k + 1, opts);
        int q = k - 1, m = 2 * k + 1;

        long long clique_count = 0;
        for_each_clique(a.graph, q * m, [&](const VertexSet&) {
            ++clique_count;
            return true;
        });
        long long families = sat_mul(clique_count, clique_family_multiplier(q, m));
        long long predicted =
            sat_add(a.graph.num_vertices(), sat_mul(families, static_cast<long long>(m)));
        check_cap(predicted, opts, "build_perfect");

        out.params = params;
        out.predicted_size = predicted;
        Pieces p = pieces_from(a.graph, "A");
        TreeDecomposition td = prefix_node_labels(*a.decomposition, "A");

        long long f = 0;
        for_each_clique_family(a.graph, q, m, [&](const CliqueFamily& fam) {
            std::string tag = "fam" + std::to_string(f);
            int offset = p.n;
            VertexSet gadget(m);
            for (int i = 0; i < m; ++i) {
                gadget[i] = offset + i;
                p.labels.push_back(tag + "/gadget/" + std::to_string(i));
            }
            p.n += m;
            for (int i = 0; i <= k; ++i) {
                for (int j = i + 1; j <= k; ++j) p.edges.emplace_back(gadget[i], gadget[j]);
            }
            for (int i = k; i <= 2 * k; ++i) {
                for (int j = i + 1; j <= 2 * k; ++j) p.edges.emplace_back(gadget[i], gadget[j]);
            }
            for (int i = 0; i < m; ++i) {
                for (int cv : fam.cliques[i]) p.edges.emplace_back(gadget[i], cv);
            }
            td = attach_gadget_bag(td, gadget, fam.union_set, tag);
            out.attachment_log.push_back({Attachment::Kind::gadget, fam.cliques, gadget});
            ++f;
            return true;
        });

        out.graph = Graph::make(p.n, p.edges, std::move(p.labels));
        out.decomposition = std::move(td);
    }

    check_construction(out, t_bound(k, r));
    return out;
}

ConstructionResult build_general(int k, int t, int r, const BuildOptions& opts) {
    require_positive(k, "k");
    require_positive(t, "t");
    require_positive(r, "r");
    ConstructionParams params{FamilyKind::general, k, r, t};

    if (t == 1) {
        return single_vertex_result(params, false);
    }
    if (k == 1) {
        // K_r: singleton parts give outcome (1), any merged part an edge.
        check_cap(r, opts, "build_general");
        std::vector<std::pair<int, int>> edges;
        std::vector<std::string> labels;
        for (int u = 0; u < r; ++u) {
            labels.push_back("v" + std::to_string(u));
            for (int v = u + 1; v < r; ++v) edges.emplace_back(u, v);
        }
        ConstructionResult out;
        out.graph = Graph::make(r, edges, std::move(labels));
        out.params = params;
        out.predicted_size = r;
        return out;
    }
    if (r >= 2) {
        ConstructionResult a = build_general(k, t, 1, opts);
        ConstructionResult b = build_general(k, t, r - 1, opts);
        ConstructionResult out = copy_step(a, b, k, params, opts, "build_general");
        if (out.graph.num_vertices() != out.predicted_size)
            throw std::logic_error("internal error: construction size differs from prediction");
        return out;
    }

    // (k,t,1) for k,t >= 2: per family of 2^|V(B)| disjoint (k-1)-cliques with
    // complete union, one copy of B = G(k,t-1,1) with clique i complete to the
    // i-th subset of the copy (subsets ordered by binary mask).
    ConstructionResult b = build_general(k, t - 1, 1, opts);
    int nb = b.graph.num_vertices();
    if (nb >= 31)
        throw CapExceeded("build_general: subset count 2^|V(B)| is astronomically large", nb, 30);
    int m = 1 << nb;

    ConstructionResult a = build_general(k - 1, t, m, opts);
    int q = k - 1;

    long long clique_count = 0;
    for_each_clique(a.graph, q * m, [&](const VertexSet&) {
        ++clique_count;
        return true;
    });
    long long families = sat_mul(clique_count, clique_family_multiplier(q, m));
    long long predicted =
        sat_add(a.graph.num_vertices(), sat_mul(families, static_cast<long long>(nb)));
    check_cap(predicted, opts, "build_general");

    ConstructionResult out;
    out.params = params;
    out.predicted_size = predicted;
    Pieces p = pieces_from(a.graph, "A");

    long long f = 0;
    for_each_clique_family(a.graph, q, m, [&](const CliqueFamily& fam) {
        std::string tag = "fam" + std::to_string(f);
        int offset = append_copy(p, b.graph, tag + "/copy");
        for (int slot = 0; slot < m; ++slot) {
            // Subset S^{slot+1} of the copy, by binary mask over its ids.
            for (int bit = 0; bit < nb; ++bit) {
                if (!(slot & (1 << bit))) continue;
                for (int cv : fam.cliques[slot]) p.edges.emplace_back(cv, offset + bit);
            }
        }
        VertexSet attached(nb);
        for (int i = 0; i < nb; ++i) attached[i] = offset + i;
        out.attachment_log.push_back({Attachment::Kind::gadget, fam.cliques, std::move(attached)});
        ++f;
        return true;
    });

    out.graph = Graph::make(p.n, p.edges, std::move(p.labels));
    if (out.graph.num_vertices() != out.predicted_size)
        throw std::logic_error("internal error: construction size differs from prediction");
    return out;
}

}  // namespace chp
