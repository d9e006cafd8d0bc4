#include "chp/recognition.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace chp {

namespace {

void verify_hole_or_die(const Graph& g, const std::vector<int>& cycle, int min_len) {
    int len = static_cast<int>(cycle.size());
    bool ok = len >= min_len;
    for (int i = 0; i < len && ok; ++i) {
        for (int j = i + 1; j < len && ok; ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == len - 1);
            if (g.adjacent(cycle[i], cycle[j]) != consecutive) ok = false;
        }
    }
    if (!ok) throw std::logic_error("internal error: produced a false induced-cycle certificate");
}

void verify_peo_or_die(const Graph& g, const std::vector<int>& elim) {
    int n = g.num_vertices();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[elim[i]] = i;
    for (int i = 0; i < n; ++i) {
        std::vector<int> later;
        for (int w : g.neighbors(elim[i])) {
            if (pos[w] > i) later.push_back(w);
        }
        for (size_t a = 0; a < later.size(); ++a) {
            for (size_t b = a + 1; b < later.size(); ++b) {
                if (!g.adjacent(later[a], later[b]))
                    throw std::logic_error("internal error: produced a false elimination ordering");
            }
        }
    }
}

// Shortest path from x to y inside `universe`, or empty.
std::vector<int> bfs_path(const Graph& g, const Bitset& universe, int x, int y) {
    std::vector<int> prev(g.num_vertices(), -1);
    std::deque<int> queue{x};
    Bitset seen(g.num_vertices());
    seen.set(x);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == y) break;
        for (int w : g.neighbors(v)) {
            if (universe.test(w) && !seen.test(w)) {
                seen.set(w);
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    if (!seen.test(y)) return {};
    std::vector<int> path;
    for (int v = y; v != -1; v = prev[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

bool mcs_is_chordal(const Graph& g, std::vector<int>* visit_order, int* fail_v, int* fail_x,
                    int* fail_y) {
    int n = g.num_vertices();
    std::vector<int> weight(n, 0);
    std::vector<char> numbered(n, 0);
    std::vector<int> order;
    order.reserve(n);
    // Weight buckets keep selection near-linear; ties break toward min id via
    // the set ordering.
    std::vector<std::set<int>> buckets(n + 1);
    for (int v = 0; v < n; ++v) buckets[0].insert(v);
    int top = 0;
    for (int step = 0; step < n; ++step) {
        while (buckets[top].empty()) --top;
        int best = *buckets[top].begin();
        buckets[top].erase(buckets[top].begin());
        numbered[best] = 1;
        order.push_back(best);
        for (int w : g.neighbors(best)) {
            if (!numbered[w]) {
                buckets[weight[w]].erase(w);
                ++weight[w];
                buckets[weight[w]].insert(w);
                top = std::max(top, weight[w]);
            }
        }
    }
    if (visit_order) *visit_order = order;

    // Chordal iff for every vertex its previously-visited neighbors form a
    // clique (equivalently reverse visit order is a perfect elimination
    // ordering).
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> earlier;
        for (int w : g.neighbors(v)) {
            if (pos[w] < i) earlier.push_back(w);
        }
        for (size_t a = 0; a < earlier.size(); ++a) {
            for (size_t b = a + 1; b < earlier.size(); ++b) {
                if (!g.adjacent(earlier[a], earlier[b])) {
                    if (fail_v) *fail_v = v;
                    if (fail_x) *fail_x = earlier[a];
                    if (fail_y) *fail_y = earlier[b];
                    return false;
                }
            }
        }
    }
    return true;
}

// Hole extraction given a failed elimination triple: v adjacent to both x and
// y, x and y nonadjacent. A shortest x-y path avoiding N[v] (except at its
// ends) closes with v into an induced cycle of length >= 4.
std::vector<int> hole_from_triple(const Graph& g, int v, int x, int y) {
    Bitset universe(g.num_vertices());
    for (int u = 0; u < g.num_vertices(); ++u) universe.set(u);
    universe.reset(v);
    for (int w : g.neighbors(v)) universe.reset(w);
    universe.set(x);
    universe.set(y);
    auto path = bfs_path(g, universe, x, y);
    if (path.empty()) return {};
    std::vector<int> cycle{v};
    cycle.insert(cycle.end(), path.begin(), path.end());
    return cycle;
}

// Fallback: shrink to a vertex-minimal non-chordal induced subgraph, which is
// exactly a hole.
std::vector<int> hole_by_minimization(const Graph& g) {
    std::vector<int> keep(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) keep[v] = v;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (keep.size() <= 4) break;
        std::vector<int> trial;
        for (int u : keep) {
            if (u != v) trial.push_back(u);
        }
        if (trial.size() < 4) continue;
        auto sub = induced_subgraph(g, trial);
        if (!mcs_is_chordal(sub.graph, nullptr, nullptr, nullptr, nullptr)) keep = trial;
    }
    // keep now induces a single cycle; walk it.
    auto sub = induced_subgraph(g, keep);
    const Graph& h = sub.graph;
    std::vector<int> cycle{0};
    int prev = -1, cur = 0;
    while (static_cast<int>(cycle.size()) < h.num_vertices()) {
        int next = -1;
        for (int w : h.neighbors(cur)) {
            if (w != prev) {
                next = w;
                break;
            }
        }
        if (next < 0) throw std::logic_error("internal error: minimal non-chordal graph not a cycle");
        cycle.push_back(next);
        prev = cur;
        cur = next;
    }
    for (int& v : cycle) v = sub.from_sub[v];
    return cycle;
}

}  // namespace

ChordalityResult is_chordal(const Graph& g) {
    ChordalityResult out;
    std::vector<int> order;
    int fv = -1, fx = -1, fy = -1;
    if (mcs_is_chordal(g, &order, &fv, &fx, &fy)) {
        out.chordal = true;
        out.elimination_order.assign(order.rbegin(), order.rend());
        verify_peo_or_die(g, out.elimination_order);
        return out;
    }
    out.chordal = false;
    out.hole = hole_from_triple(g, fv, fx, fy);
    if (out.hole.empty()) out.hole = hole_by_minimization(g);
    verify_hole_or_die(g, out.hole, 4);
    return out;
}

namespace {

// Canonical enumeration of induced cycles of exact length: the start vertex is
// the cycle minimum and the second vertex is smaller than the last.
struct CycleSearch {
    const Graph& g;
    int target_len;
    std::vector<int> path;
    Bitset blocked;  // vertices already on the path

    bool extend() {
        int depth = static_cast<int>(path.size());
        int s = path[0];
        if (depth == target_len) {
            if (g.adjacent(path.back(), s) && path[1] < path.back()) return true;
            return false;
        }
        int last = path.back();
        for (int w : g.neighbors(last)) {
            if (w <= s || blocked.test(w)) continue;
            // Induced-path constraint: w may touch only `last` among the path,
            // except that the closing vertex may also touch the start.
            bool ok = true;
            for (int i = 0; i < depth - 1 && ok; ++i) {
                if (g.adjacent(w, path[i]) && !(i == 0 && depth == target_len - 1)) ok = false;
            }
            if (!ok) continue;
            path.push_back(w);
            blocked.set(w);
            if (extend()) return true;
            blocked.reset(w);
            path.pop_back();
        }
        return false;
    }
};

std::optional<std::vector<int>> find_induced_cycle_exact(const Graph& g, int len) {
    for (int s = 0; s < g.num_vertices(); ++s) {
        CycleSearch search{g, len, {s}, Bitset(g.num_vertices())};
        search.blocked.set(s);
        if (search.extend()) return search.path;
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> find_induced_long_cycle(const Graph& g, int min_len, int cap) {
    if (min_len < 4) throw GraphError("find_induced_long_cycle: min_len must be >= 4");
    if (g.num_vertices() > cap)
        throw CapExceeded("find_induced_long_cycle refused", g.num_vertices(), cap);
    for (int len = min_len; len <= g.num_vertices(); ++len) {
        if (auto cycle = find_induced_cycle_exact(g, len)) {
            verify_hole_or_die(g, *cycle, min_len);
            return cycle;
        }
    }
    return std::nullopt;
}

PerfectionResult is_perfect_small(const Graph& g, int cap) {
    if (g.num_vertices() > cap)
        throw CapExceeded("is_perfect_small refused", g.num_vertices(), cap);
    PerfectionResult out;
    Graph co = complement(g);
    for (int side = 0; side < 2; ++side) {
        const Graph& h = side == 0 ? g : co;
        for (int len = 5; len <= h.num_vertices(); len += 2) {
            if (auto cycle = find_induced_cycle_exact(h, len)) {
                verify_hole_or_die(h, *cycle, 5);
                out.perfect = false;
                out.certificate_in_complement = (side == 1);
                out.hole = *cycle;
                return out;
            }
        }
    }
    out.perfect = true;
    return out;
}

namespace {

bool colorable_with(const Graph& g, int k, const std::vector<int>& order) {
    int n = g.num_vertices();
    std::vector<int> color(n, -1);
    // Assign in the given order; a vertex may open at most one fresh color.
    auto rec = [&](auto&& self, int idx, int used) -> bool {
        if (idx == n) return true;
        int v = order[idx];
        int limit = std::min(used + 1, k);
        for (int c = 0; c < limit; ++c) {
            bool ok = true;
            for (int w : g.neighbors(v)) {
                if (color[w] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color[v] = c;
            if (self(self, idx + 1, std::max(used, c + 1))) return true;
            color[v] = -1;
        }
        return false;
    };
    return rec(rec, 0, 0);
}

}  // namespace

int chromatic_number(const Graph& g, int cap) {
    if (g.num_vertices() > cap)
        throw CapExceeded("chromatic_number refused", g.num_vertices(), cap);
    int n = g.num_vertices();
    if (n == 0) return 0;

    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b)
                                                                    : a < b; });
    int lower = max_clique_size(g);
    for (int k = lower; k <= n; ++k) {
        if (colorable_with(g, k, order)) return k;
    }
    return n;
}

namespace {

struct CliqueBB {
    const Graph& g;
    long long budget;
    long long expansions = 0;
    int best = 0;

    // Greedy coloring bound: a candidate in color class c can extend the
    // clique by at most c vertices. Candidates are processed in decreasing
    // color order so the bound prunes whole tails.
    void expand(Bitset candidates, int depth) {
        if (++expansions > budget)
            throw CapExceeded("max_clique_size budget exhausted", expansions, budget);
        std::vector<int> verts = candidates.to_vector();
        if (verts.empty()) {
            best = std::max(best, depth);
            return;
        }
        std::vector<int> color(verts.size());
        std::vector<Bitset> classes;
        for (size_t i = 0; i < verts.size(); ++i) {
            size_t c = 0;
            while (c < classes.size() && classes[c].intersects(g.adjacency_row(verts[i]))) ++c;
            if (c == classes.size()) classes.emplace_back(g.num_vertices());
            classes[c].set(verts[i]);
            color[i] = static_cast<int>(c) + 1;
        }
        std::vector<int> by_color(verts.size());
        for (size_t i = 0; i < verts.size(); ++i) by_color[i] = static_cast<int>(i);
        std::stable_sort(by_color.begin(), by_color.end(),
                         [&](int a, int b) { return color[a] < color[b]; });
        for (int idx = static_cast<int>(by_color.size()) - 1; idx >= 0; --idx) {
            int i = by_color[idx];
            if (depth + color[i] <= best) return;  // everything left has color <= this
            int v = verts[i];
            Bitset next = candidates;
            next &= g.adjacency_row(v);
            best = std::max(best, depth + 1);
            expand(next, depth + 1);
            candidates.reset(v);
        }
    }
};

}  // namespace

int max_clique_size(const Graph& g, long long budget) {
    if (g.num_vertices() == 0) return 0;
    if (!g.has_adjacency_rows())
        throw CapExceeded("max_clique_size needs dense adjacency rows", g.num_vertices(),
                          kDenseAdjacencyLimit);
    CliqueBB bb{g, budget};
    Bitset all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all.set(v);
    bb.expand(all, 0);
    return bb.best;
}

}  // namespace chp
