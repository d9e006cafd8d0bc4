#include "chp/partition.hpp"

#include <algorithm>
#include <cassert>

namespace chp {

Partition make_partition(const Graph& g, std::vector<VertexSet> parts) {
    for (auto& part : parts) {
        if (part.empty()) throw GraphError("partition contains an empty part");
        std::sort(part.begin(), part.end());
    }
    std::sort(parts.begin(), parts.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
    Partition p{std::move(parts), g.num_vertices()};
    require_partition(g, p);
    return p;
}

void require_partition(const Graph& g, const Partition& p) {
    if (p.graph_n != g.num_vertices())
        throw GraphError("partition built for n=" + std::to_string(p.graph_n) +
                         ", graph has n=" + std::to_string(g.num_vertices()));
    std::vector<char> seen(g.num_vertices(), 0);
    int prev_min = -1;
    for (const auto& part : p.parts) {
        if (part.empty()) throw GraphError("partition contains an empty part");
        if (part.front() <= prev_min)
            throw GraphError("parts must be ordered by minimum member id");
        prev_min = part.front();
        int prev = -1;
        for (int v : part) {
            if (v < 0 || v >= g.num_vertices())
                throw GraphError("partition names vertex " + std::to_string(v) +
                                 " outside 0.." + std::to_string(g.num_vertices() - 1));
            if (v <= prev) throw GraphError("part ids must be sorted ascending and unique");
            prev = v;
            if (seen[v])
                throw GraphError("vertex " + std::to_string(v) + " appears in two parts");
            seen[v] = 1;
        }
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!seen[v]) throw GraphError("vertex " + std::to_string(v) + " is in no part");
    }
}

bool is_connected_partition(const Graph& g, const Partition& p) {
    require_partition(g, p);
    for (const auto& part : p.parts) {
        if (!is_connected(g, part)) return false;
    }
    return true;
}

QuotientGraph quotient(const Graph& g, const Partition& p) {
    require_partition(g, p);
    QuotientGraph q;
    q.part_map.assign(g.num_vertices(), -1);
    for (int i = 0; i < p.num_parts(); ++i) {
        for (int v : p.parts[i]) q.part_map[v] = i;
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) {
        int pu = q.part_map[u], pv = q.part_map[v];
        if (pu != pv) edges.emplace_back(std::min(pu, pv), std::max(pu, pv));
    }
    q.graph = Graph::make(p.num_parts(), edges);
    return q;
}

RestrictionPrecondition check_restriction_precondition(const Graph& g, const VertexSet& x) {
    require_vertex_set(g, x, "check_restriction_precondition");
    if (x.empty()) throw GraphError("check_restriction_precondition: X must be nonempty");

    Bitset in_x = Bitset::from(x, g.num_vertices());
    Bitset outside(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!in_x.test(v)) outside.set(v);
    }

    for (const auto& comp : components_within(g, outside)) {
        // Neighbourhood of the component inside X.
        VertexSet nbhd;
        Bitset nb(g.num_vertices());
        for (int v : comp) {
            for (int w : g.neighbors(v)) {
                if (in_x.test(w) && !nb.test(w)) {
                    nb.set(w);
                    nbhd.push_back(w);
                }
            }
        }
        std::sort(nbhd.begin(), nbhd.end());
        for (size_t i = 0; i < nbhd.size(); ++i) {
            for (size_t j = i + 1; j < nbhd.size(); ++j) {
                if (!g.adjacent(nbhd[i], nbhd[j]))
                    return {false, comp, nbhd[i], nbhd[j]};
            }
        }
    }
    return {true, {}, -1, -1};
}

Restriction restrict_partition(const Graph& g, const Partition& p, const VertexSet& x,
                               bool force) {
    require_partition(g, p);
    if (!force) {
        auto pre = check_restriction_precondition(g, x);
        if (!pre.ok) {
            std::string comp = "{";
            for (size_t i = 0; i < pre.component.size(); ++i) {
                if (i) comp += ",";
                comp += std::to_string(pre.component[i]);
            }
            comp += "}";
            throw GraphError(
                "restrict: hypothesis violated, component " + comp + " of G-X has nonadjacent "
                "neighbors " + std::to_string(pre.u) + " and " + std::to_string(pre.v) +
                " (pass force to restrict anyway)");
        }
    }

    auto sub = induced_subgraph(g, x);
    Restriction out;
    out.subgraph = std::move(sub.graph);
    out.to_sub = std::move(sub.to_sub);
    out.from_sub = std::move(sub.from_sub);
    out.forced = force;

    std::vector<std::pair<VertexSet, int>> traces;
    for (int i = 0; i < p.num_parts(); ++i) {
        VertexSet trace;
        for (int v : p.parts[i]) {
            if (out.to_sub[v] >= 0) trace.push_back(out.to_sub[v]);
        }
        if (!trace.empty()) {
            std::sort(trace.begin(), trace.end());
            traces.emplace_back(std::move(trace), i);
        }
    }
    std::sort(traces.begin(), traces.end(), [](const auto& a, const auto& b) {
        return a.first.front() < b.first.front();
    });
    std::vector<VertexSet> parts;
    for (auto& [trace, origin] : traces) {
        parts.push_back(std::move(trace));
        out.part_origin.push_back(origin);
    }
    out.partition = Partition{std::move(parts), out.subgraph.num_vertices()};
    require_partition(out.subgraph, out.partition);

#ifndef NDEBUG
    // Conclusions of the restriction lemma, asserted post-hoc when the
    // hypothesis was actually checked.
    if (!force && is_connected_partition(g, p)) {
        assert(is_connected_partition(out.subgraph, out.partition));
        QuotientGraph big = quotient(g, p);
        QuotientGraph small = quotient(out.subgraph, out.partition);
        for (int i = 0; i < out.partition.num_parts(); ++i) {
            for (int j = i + 1; j < out.partition.num_parts(); ++j) {
                assert(small.graph.adjacent(i, j) ==
                       big.graph.adjacent(out.part_origin[i], out.part_origin[j]));
            }
        }
    }
#endif
    return out;
}

std::optional<SpreadWitness> outcome_clique_spread(const Graph& g, const Partition& p, int k,
                                                   int r) {
    if (k < 1 || r < 1) throw GraphError("outcome_clique_spread: k and r must be >= 1");
    require_partition(g, p);
    long long want = static_cast<long long>(k) * r;
    if (want > g.num_vertices()) return std::nullopt;

    std::vector<int> part_of(g.num_vertices());
    for (int i = 0; i < p.num_parts(); ++i) {
        for (int v : p.parts[i]) part_of[v] = i;
    }

    std::optional<SpreadWitness> found;
    std::vector<int> hits(p.num_parts(), 0);
    for_each_clique(g, static_cast<int>(want), [&](const VertexSet& clique) {
        std::fill(hits.begin(), hits.end(), 0);
        for (int v : clique) ++hits[part_of[v]];
        std::vector<int> touched;
        bool ok = true;
        for (int i = 0; i < p.num_parts() && ok; ++i) {
            if (hits[i] == 0) continue;
            if (hits[i] != k) ok = false;
            else touched.push_back(i);
        }
        if (ok && static_cast<int>(touched.size()) == r) {
            found = SpreadWitness{clique, touched};
            return false;
        }
        return true;
    });
    return found;
}

std::optional<PartCliqueWitness> outcome_part_clique(const Graph& g, const Partition& p, int k) {
    if (k < 0) throw GraphError("outcome_part_clique: k must be >= 0");
    require_partition(g, p);
    for (int i = 0; i < p.num_parts(); ++i) {
        if (static_cast<int>(p.parts[i].size()) < k + 1) continue;
        if (auto clique = find_clique_within(g, p.parts[i], k + 1))
            return PartCliqueWitness{i, *clique};
    }
    return std::nullopt;
}

// --- enumerator --------------------------------------------------------------

ConnectedPartitionEnumerator::ConnectedPartitionEnumerator(const Graph& g, int cap) : g_(g) {
    n_ = g.num_vertices();
    if (n_ > cap)
        throw CapExceeded("connected-partition enumeration refused", n_, cap);
    if (n_ > 64)
        throw CapExceeded("connected-partition enumeration uses 64-bit masks", n_, 64);
    adj_.assign(n_, 0);
    for (auto [u, v] : g.edges()) {
        adj_[u] |= (uint64_t{1} << v);
        adj_[v] |= (uint64_t{1} << u);
    }
    part_mask_.assign(n_ + 1, 0);
    part_connected_.assign(n_ + 1, 0);
    rgs_.assign(std::max(n_, 1), 0);
    future_ = n_ >= 64 ? ~uint64_t{0} : (uint64_t{1} << n_) - 1;
}

bool ConnectedPartitionEnumerator::connected_mask(uint64_t mask) const {
    if (mask == 0) return false;
    uint64_t reached = mask & (~mask + 1);  // lowest bit
    uint64_t frontier = reached;
    while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        uint64_t fresh = adj_[v] & mask & ~reached;
        reached |= fresh;
        frontier |= fresh;
    }
    return reached == mask;
}

bool ConnectedPartitionEnumerator::viable(int part) const {
    if (part_connected_[part]) return true;
    uint64_t universe = part_mask_[part] | future_;
    uint64_t target = part_mask_[part];
    uint64_t reached = target & (~target + 1);
    uint64_t frontier = reached;
    while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        uint64_t fresh = adj_[v] & universe & ~reached;
        reached |= fresh;
        frontier |= fresh;
    }
    return (target & ~reached) == 0;
}

bool ConnectedPartitionEnumerator::all_viable() const {
    for (int b = 0; b < num_parts_; ++b) {
        if (!viable(b)) return false;
    }
    return true;
}

void ConnectedPartitionEnumerator::load_prefix(const std::vector<int>& prefix) {
    std::fill(part_mask_.begin(), part_mask_.end(), 0);
    std::fill(part_connected_.begin(), part_connected_.end(), 0);
    num_parts_ = 0;
    future_ = n_ >= 64 ? ~uint64_t{0} : (uint64_t{1} << n_) - 1;
    for (size_t i = 0; i < prefix.size(); ++i) {
        int b = prefix[i];
        if (b < 0 || b > num_parts_) throw GraphError("malformed RGS prefix");
        rgs_[i] = b;
        if (b == num_parts_) ++num_parts_;
        part_mask_[b] |= (uint64_t{1} << i);
        future_ &= ~(uint64_t{1} << i);
    }
    for (int b = 0; b < num_parts_; ++b)
        part_connected_[b] = connected_mask(part_mask_[b]) ? 1 : 0;
}

std::vector<std::vector<int>> ConnectedPartitionEnumerator::prefixes(int depth) {
    depth = std::min(depth, n_);
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    // Depth-limited version of the main recursion, without connectivity
    // shortcuts: viability alone decides which prefixes survive.
    auto rec = [&](auto&& self, int i) -> void {
        if (i == depth) {
            out.push_back(current);
            return;
        }
        future_ &= ~(uint64_t{1} << i);
        int limit = num_parts_;
        for (int b = 0; b <= limit; ++b) {
            bool fresh = (b == num_parts_);
            current.push_back(b);
            part_mask_[b] |= (uint64_t{1} << i);
            char prev = part_connected_[b];
            part_connected_[b] = connected_mask(part_mask_[b]) ? 1 : 0;
            if (fresh) ++num_parts_;
            if (all_viable()) self(self, i + 1);
            if (fresh) --num_parts_;
            part_connected_[b] = prev;
            part_mask_[b] &= ~(uint64_t{1} << i);
            current.pop_back();
        }
        future_ |= (uint64_t{1} << i);
    };
    rec(rec, 0);
    return out;
}

Partition partition_from_masks(const Graph& g, int num_parts, const uint64_t* part_masks) {
    std::vector<VertexSet> parts(num_parts);
    for (int b = 0; b < num_parts; ++b) {
        uint64_t m = part_masks[b];
        while (m) {
            parts[b].push_back(std::countr_zero(m));
            m &= m - 1;
        }
    }
    return Partition{std::move(parts), g.num_vertices()};
}

std::vector<Partition> enumerate_connected_partitions(const Graph& g, int cap) {
    ConnectedPartitionEnumerator en(g, cap);
    std::vector<Partition> out;
    en.run([&](int num_parts, const uint64_t* masks, const int*) {
        out.push_back(partition_from_masks(g, num_parts, masks));
        return true;
    });
    return out;
}

uint64_t count_connected_partitions(const Graph& g, int cap) {
    ConnectedPartitionEnumerator en(g, cap);
    return en.run([](int, const uint64_t*, const int*) { return true; });
}

}  // namespace chp
