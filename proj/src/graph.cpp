#include "chp/graph.hpp"

#include <algorithm>

namespace chp {

Graph Graph::make(int n, const std::vector<std::pair<int, int>>& edges,
                  std::vector<std::string> labels) {
    if (n < 0) throw GraphError("vertex count must be nonnegative");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw GraphError("label vector size " + std::to_string(labels.size()) +
                         " does not match vertex count " + std::to_string(n));
    Graph g;
    g.n_ = n;
    g.labels_ = std::move(labels);
    g.edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") out of range for n=" + std::to_string(n));
        if (u == v)
            throw GraphError("self-loop (" + std::to_string(u) + "," + std::to_string(v) +
                             ") rejected");
        g.edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    g.nbrs_.assign(n, {});
    for (auto [u, v] : g.edges_) {
        g.nbrs_[u].push_back(v);
        g.nbrs_[v].push_back(u);
    }
    for (auto& lst : g.nbrs_) std::sort(lst.begin(), lst.end());

    if (n <= kDenseAdjacencyLimit) {
        g.rows_.assign(n, Bitset(n));
        for (auto [u, v] : g.edges_) {
            g.rows_[u].set(v);
            g.rows_[v].set(u);
        }
    }
    return g;
}

bool Graph::adjacent(int u, int v) const {
    if (u == v) return false;
    if (!rows_.empty()) return rows_[u].test(v);
    const auto& small = nbrs_[u].size() <= nbrs_[v].size() ? nbrs_[u] : nbrs_[v];
    int other = nbrs_[u].size() <= nbrs_[v].size() ? v : u;
    return std::binary_search(small.begin(), small.end(), other);
}

void require_vertex_set(const Graph& g, const VertexSet& s, const char* what) {
    int prev = -1;
    for (int v : s) {
        if (v < 0 || v >= g.num_vertices())
            throw GraphError(std::string(what) + ": vertex " + std::to_string(v) +
                             " out of range for n=" + std::to_string(g.num_vertices()));
        if (v <= prev)
            throw GraphError(std::string(what) + ": ids must be sorted ascending and unique");
        prev = v;
    }
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    require_vertex_set(g, s, "induced_subgraph");
    if (s.empty()) throw GraphError("induced_subgraph: empty vertex set");

    InducedSubgraph out;
    out.to_sub.assign(g.num_vertices(), -1);
    out.from_sub = s;
    for (size_t i = 0; i < s.size(); ++i) out.to_sub[s[i]] = static_cast<int>(i);

    std::vector<std::pair<int, int>> edges;
    for (int v : s) {
        for (int w : g.neighbors(v)) {
            if (w > v && out.to_sub[w] >= 0) edges.emplace_back(out.to_sub[v], out.to_sub[w]);
        }
    }
    std::vector<std::string> labels;
    if (!g.labels().empty()) {
        labels.reserve(s.size());
        for (int v : s) labels.push_back(g.labels()[v]);
    }
    out.graph = Graph::make(static_cast<int>(s.size()), edges, std::move(labels));
    return out;
}

std::vector<VertexSet> components(const Graph& g) {
    std::vector<VertexSet> comps;
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<int> stack;
    for (int start = 0; start < g.num_vertices(); ++start) {
        if (seen[start]) continue;
        VertexSet comp;
        stack.push_back(start);
        seen[start] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<VertexSet> components_within(const Graph& g, const Bitset& universe) {
    std::vector<VertexSet> comps;
    Bitset seen(g.num_vertices());
    std::vector<int> stack;
    for (int start = universe.find_first(); start >= 0; start = universe.find_next(start)) {
        if (seen.test(start)) continue;
        VertexSet comp;
        stack.push_back(start);
        seen.set(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v)) {
                if (universe.test(w) && !seen.test(w)) {
                    seen.set(w);
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g, const VertexSet& s) {
    if (s.empty()) return false;
    Bitset universe = Bitset::from(s, g.num_vertices());
    Bitset seen(g.num_vertices());
    std::vector<int> stack{s[0]};
    seen.set(s[0]);
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
            if (universe.test(w) && !seen.test(w)) {
                seen.set(w);
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == static_cast<int>(s.size());
}

bool is_clique(const Graph& g, const VertexSet& s) {
    require_vertex_set(g, s, "is_clique");
    for (size_t i = 0; i < s.size(); ++i) {
        for (size_t j = i + 1; j < s.size(); ++j) {
            if (!g.adjacent(s[i], s[j])) return false;
        }
    }
    return true;
}

namespace {

// Lexicographic clique extension: candidates stay sorted and above the last
// chosen vertex.
bool extend_clique(const Graph& g, VertexSet& current, const std::vector<int>& candidates,
                   int size, const std::function<bool(const VertexSet&)>& visit) {
    if (static_cast<int>(current.size()) == size) return visit(current);
    int need = size - static_cast<int>(current.size());
    int avail = static_cast<int>(candidates.size());
    for (int idx = 0; idx + need <= avail; ++idx) {
        int v = candidates[idx];
        std::vector<int> next;
        next.reserve(candidates.size() - idx - 1);
        for (int j = idx + 1; j < avail; ++j) {
            if (g.adjacent(v, candidates[j])) next.push_back(candidates[j]);
        }
        current.push_back(v);
        bool keep_going = extend_clique(g, current, next, size, visit);
        current.pop_back();
        if (!keep_going) return false;
    }
    return true;
}

}  // namespace

void for_each_clique(const Graph& g, int size,
                     const std::function<bool(const VertexSet&)>& visit) {
    if (size < 1) throw GraphError("clique size must be >= 1");
    std::vector<int> all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
    VertexSet current;
    extend_clique(g, current, all, size, visit);
}

std::vector<VertexSet> enumerate_cliques(const Graph& g, int size) {
    std::vector<VertexSet> out;
    for_each_clique(g, size, [&](const VertexSet& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

std::optional<VertexSet> find_clique_within(const Graph& g, const VertexSet& candidates,
                                            int size) {
    if (size < 1) throw GraphError("clique size must be >= 1");
    std::optional<VertexSet> found;
    VertexSet current;
    extend_clique(g, current, candidates, size, [&](const VertexSet& c) {
        found = c;
        return false;
    });
    return found;
}

Graph complement(const Graph& g) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.num_vertices(); ++u) {
        for (int v = u + 1; v < g.num_vertices(); ++v) {
            if (!g.adjacent(u, v)) edges.emplace_back(u, v);
        }
    }
    return Graph::make(g.num_vertices(), edges, g.labels());
}

namespace {

// Backtracking embedding search. H vertices are processed in an order that
// keeps each vertex adjacent to an already-placed one when possible.
struct EmbedSearch {
    const Graph& g;
    const Graph& h;
    std::vector<int> order;       // h vertices in placement order
    std::vector<int> assign;      // h vertex -> g vertex
    std::vector<char> used;       // g vertex in use

    bool place(size_t depth) {
        if (depth == order.size()) return true;
        int hv = order[depth];
        for (int gv = 0; gv < g.num_vertices(); ++gv) {
            if (used[gv]) continue;
            bool ok = true;
            for (size_t i = 0; i < depth && ok; ++i) {
                int hw = order[i];
                if (h.adjacent(hv, hw) != g.adjacent(gv, assign[hw])) ok = false;
            }
            if (!ok) continue;
            assign[hv] = gv;
            used[gv] = 1;
            if (place(depth + 1)) return true;
            used[gv] = 0;
        }
        return false;
    }
};

std::vector<int> connectivity_order(const Graph& h) {
    int n = h.num_vertices();
    std::vector<int> order;
    std::vector<char> placed(n, 0);
    // Seed with max degree; then prefer vertices with most placed neighbors.
    while (static_cast<int>(order.size()) < n) {
        int best = -1, best_key = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            int attached = 0;
            for (int w : h.neighbors(v))
                if (placed[w]) ++attached;
            int key = attached * (n + 1) + h.degree(v);
            if (key > best_key) {
                best_key = key;
                best = v;
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    return order;
}

}  // namespace

std::optional<std::vector<int>> contains_induced(const Graph& g, const Graph& h, int cap) {
    if (h.num_vertices() > cap)
        throw CapExceeded("contains_induced: pattern too large", h.num_vertices(), cap);
    if (h.num_vertices() > g.num_vertices()) return std::nullopt;
    if (h.num_vertices() == 0) return std::vector<int>{};

    EmbedSearch search{g, h, connectivity_order(h), std::vector<int>(h.num_vertices(), -1),
                       std::vector<char>(g.num_vertices(), 0)};
    if (search.place(0)) return search.assign;
    return std::nullopt;
}

namespace {

// Iterated degree refinement; returns per-vertex color classes or nullopt when
// the multisets already distinguish the graphs.
std::optional<std::pair<std::vector<int>, std::vector<int>>> refine_colors(const Graph& g,
                                                                           const Graph& h) {
    int n = g.num_vertices();
    std::vector<int> cg(n), ch(n);
    for (int v = 0; v < n; ++v) {
        cg[v] = g.degree(v);
        ch[v] = h.degree(v);
    }
    for (int round = 0; round < n; ++round) {
        // Signature: own color plus sorted neighbor colors.
        auto signatures = [&](const Graph& gr, const std::vector<int>& col) {
            std::vector<std::vector<int>> sig(n);
            for (int v = 0; v < n; ++v) {
                sig[v].push_back(col[v]);
                for (int w : gr.neighbors(v)) sig[v].push_back(col[w]);
                std::sort(sig[v].begin() + 1, sig[v].end());
            }
            return sig;
        };
        auto sg = signatures(g, cg);
        auto sh = signatures(h, ch);
        std::vector<std::vector<int>> all = sg;
        all.insert(all.end(), sh.begin(), sh.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        auto rank = [&](const std::vector<int>& s) {
            return static_cast<int>(std::lower_bound(all.begin(), all.end(), s) - all.begin());
        };
        std::vector<int> ng(n), nh(n);
        for (int v = 0; v < n; ++v) {
            ng[v] = rank(sg[v]);
            nh[v] = rank(sh[v]);
        }
        auto mg = ng, mh = nh;
        std::sort(mg.begin(), mg.end());
        std::sort(mh.begin(), mh.end());
        if (mg != mh) return std::nullopt;
        if (ng == cg && nh == ch) break;
        cg = ng;
        ch = nh;
    }
    return std::make_pair(cg, ch);
}

bool iso_backtrack(const Graph& g, const Graph& h, const std::vector<int>& cg,
                   const std::vector<int>& ch, std::vector<int>& assign, std::vector<char>& used,
                   int v) {
    int n = g.num_vertices();
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
        if (used[w] || cg[v] != ch[w]) continue;
        bool ok = true;
        for (int u = 0; u < v && ok; ++u) {
            if (g.adjacent(v, u) != h.adjacent(w, assign[u])) ok = false;
        }
        if (!ok) continue;
        assign[v] = w;
        used[w] = 1;
        if (iso_backtrack(g, h, cg, ch, assign, used, v + 1)) return true;
        used[w] = 0;
    }
    return false;
}

}  // namespace

bool are_isomorphic(const Graph& g, const Graph& h, int cap) {
    int n = std::max(g.num_vertices(), h.num_vertices());
    if (n > cap) throw CapExceeded("are_isomorphic: graph too large", n, cap);
    if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges()) return false;
    auto colors = refine_colors(g, h);
    if (!colors) return false;
    std::vector<int> assign(g.num_vertices(), -1);
    std::vector<char> used(g.num_vertices(), 0);
    return iso_backtrack(g, h, colors->first, colors->second, assign, used, 0);
}

}  // namespace chp
