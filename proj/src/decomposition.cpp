#include "chp/decomposition.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace chp {

int TreeDecomposition::max_bag_size() const {
    int m = 0;
    for (const auto& b : bags) m = std::max(m, static_cast<int>(b.size()));
    return m;
}

int width(const TreeDecomposition& td) {
    if (td.bags.empty()) throw GraphError("width: decomposition has no nodes");
    return td.max_bag_size() - 1;
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

std::string vs_to_string(const VertexSet& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

}  // namespace

std::vector<TdViolation> validate(const Graph& g, const TreeDecomposition& td) {
    using Kind = TdViolation::Kind;
    std::vector<TdViolation> out;
    int nn = td.num_nodes();

    if (td.graph_n != g.num_vertices()) {
        out.push_back({Kind::graph_mismatch, td.graph_n, g.num_vertices(),
                       "decomposition built for n=" + std::to_string(td.graph_n) +
                           ", graph has n=" + std::to_string(g.num_vertices())});
        return out;
    }

    // Tree structure.
    Dsu dsu(std::max(nn, 1));
    bool structure_ok = true;
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || a >= nn || b < 0 || b >= nn) {
            out.push_back({Kind::bad_tree_edge, a, b,
                           "tree edge (" + std::to_string(a) + "," + std::to_string(b) +
                               ") out of range"});
            structure_ok = false;
            continue;
        }
        if (!dsu.unite(a, b)) {
            out.push_back({Kind::tree_cycle, a, b,
                           "tree edge (" + std::to_string(a) + "," + std::to_string(b) +
                               ") closes a cycle"});
            structure_ok = false;
        }
    }
    for (int x = 1; x < nn; ++x) {
        if (dsu.find(x) != dsu.find(0)) {
            out.push_back({Kind::tree_disconnected, 0, x,
                           "tree node " + std::to_string(x) + " not connected to node 0"});
            structure_ok = false;
            break;
        }
    }

    // Bag contents and per-vertex node lists.
    std::vector<std::vector<int>> holding(g.num_vertices());
    for (int x = 0; x < nn; ++x) {
        for (int v : td.bags[x]) {
            if (v < 0 || v >= g.num_vertices()) {
                out.push_back({Kind::bag_out_of_range, x, v,
                               "bag of node " + std::to_string(x) + " contains non-vertex " +
                                   std::to_string(v)});
                continue;
            }
            holding[v].push_back(x);
        }
    }

    for (int v = 0; v < g.num_vertices(); ++v) {
        if (holding[v].empty())
            out.push_back({Kind::vertex_uncovered, v, -1,
                           "vertex " + std::to_string(v) + " appears in no bag"});
    }

    // Edge coverage: scan the smaller node list, binary-searching bags.
    for (auto [u, v] : g.edges()) {
        const auto& small = holding[u].size() <= holding[v].size() ? holding[u] : holding[v];
        int other = holding[u].size() <= holding[v].size() ? v : u;
        bool covered = false;
        for (int x : small) {
            if (std::binary_search(td.bags[x].begin(), td.bags[x].end(), other)) {
                covered = true;
                break;
            }
        }
        if (!covered)
            out.push_back({Kind::edge_uncovered, u, v,
                           "edge (" + std::to_string(u) + "," + std::to_string(v) +
                               ") has no common bag"});
    }

    // Connected-subtree property, meaningful only on a valid tree.
    if (structure_ok && nn > 0) {
        std::vector<std::vector<int>> tree_adj(nn);
        for (auto [a, b] : td.tree_edges) {
            tree_adj[a].push_back(b);
            tree_adj[b].push_back(a);
        }
        std::vector<int> mark(nn, -1);
        std::vector<int> stack;
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (holding[v].empty()) continue;
            for (int x : holding[v]) mark[x] = v;
            int reached = 1;
            stack.push_back(holding[v][0]);
            mark[holding[v][0]] = -2 - v;  // visited sentinel for this vertex
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : tree_adj[x]) {
                    if (mark[y] == v) {
                        mark[y] = -2 - v;
                        ++reached;
                        stack.push_back(y);
                    }
                }
            }
            if (reached != static_cast<int>(holding[v].size()))
                out.push_back({Kind::subtree_disconnected, v, -1,
                               "nodes holding vertex " + std::to_string(v) +
                                   " induce a disconnected subtree (" + std::to_string(reached) +
                                   " of " + std::to_string(holding[v].size()) + " reachable)"});
        }
    }

    return out;
}

int bag_containing(const TreeDecomposition& td, const VertexSet& clique) {
    if (!std::is_sorted(clique.begin(), clique.end()))
        throw GraphError("bag_containing: vertex set must be sorted");
    for (int x = 0; x < td.num_nodes(); ++x) {
        if (std::includes(td.bags[x].begin(), td.bags[x].end(), clique.begin(), clique.end()))
            return x;
    }
    throw GraphError("bag_containing: no bag contains " + vs_to_string(clique) +
                     "; the set is not a clique or the decomposition is invalid");
}

namespace {

VertexSet merged(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<std::string> combined_labels(const TreeDecomposition& ta, const TreeDecomposition& tb,
                                         const std::string& tag) {
    if (ta.node_labels.empty() && tb.node_labels.empty() && tag.empty()) return {};
    std::vector<std::string> out(ta.num_nodes() + tb.num_nodes());
    for (int i = 0; i < ta.num_nodes(); ++i)
        out[i] = ta.node_labels.empty() ? "" : ta.node_labels[i];
    for (int i = 0; i < tb.num_nodes(); ++i) {
        std::string base = tb.node_labels.empty() ? std::to_string(i) : tb.node_labels[i];
        out[ta.num_nodes() + i] = tag.empty() ? base : tag + "/" + base;
    }
    return out;
}

}  // namespace

TreeDecomposition attach_copy(const TreeDecomposition& ta, const TreeDecomposition& tb,
                              const VertexSet& c, const std::string& copy_tag) {
    if (ta.num_nodes() == 0 || tb.num_nodes() == 0)
        throw GraphError("attach_copy: decompositions must be nonempty");
    int max_b_id = -1;
    for (const auto& bag : tb.bags) {
        for (int v : bag) {
            if (v < ta.graph_n)
                throw GraphError("attach_copy: id collision, copy vertex " + std::to_string(v) +
                                 " overlaps base range [0," + std::to_string(ta.graph_n) + ")");
            max_b_id = std::max(max_b_id, v);
        }
    }
    for (int v : c) {
        if (v < 0 || v >= ta.graph_n)
            throw GraphError("attach_copy: clique vertex " + std::to_string(v) +
                             " is not a base vertex");
    }

    int host = bag_containing(ta, c);

    TreeDecomposition out;
    out.graph_n = std::max(ta.graph_n, max_b_id + 1);
    out.bags = ta.bags;
    out.bags.reserve(ta.num_nodes() + tb.num_nodes());
    for (const auto& bag : tb.bags) out.bags.push_back(merged(bag, c));
    out.tree_edges = ta.tree_edges;
    for (auto [a, b] : tb.tree_edges)
        out.tree_edges.emplace_back(ta.num_nodes() + a, ta.num_nodes() + b);
    out.tree_edges.emplace_back(host, ta.num_nodes());
    out.node_labels = combined_labels(ta, tb, copy_tag);

    assert(out.max_bag_size() ==
           std::max(ta.max_bag_size(), tb.max_bag_size() + static_cast<int>(c.size())));
    return out;
}

TreeDecomposition attach_gadget_bag(const TreeDecomposition& ta, const VertexSet& gadget_vertices,
                                    const VertexSet& family_union, const std::string& node_tag) {
    if (ta.num_nodes() == 0) throw GraphError("attach_gadget_bag: empty decomposition");
    int max_gadget = -1;
    for (int v : gadget_vertices) {
        if (v < ta.graph_n)
            throw GraphError("attach_gadget_bag: gadget vertex " + std::to_string(v) +
                             " overlaps base range [0," + std::to_string(ta.graph_n) + ")");
        max_gadget = std::max(max_gadget, v);
    }
    for (int v : family_union) {
        if (v < 0 || v >= ta.graph_n)
            throw GraphError("attach_gadget_bag: family vertex " + std::to_string(v) +
                             " is not a base vertex");
    }

    int host = bag_containing(ta, family_union);

    TreeDecomposition out = ta;
    out.graph_n = std::max(ta.graph_n, max_gadget + 1);
    out.bags.push_back(merged(gadget_vertices, family_union));
    out.tree_edges.emplace_back(host, out.num_nodes() - 1);
    if (!out.node_labels.empty() || !node_tag.empty()) {
        out.node_labels.resize(out.num_nodes() - 1, "");
        out.node_labels.push_back(node_tag);
    }
    return out;
}

}  // namespace chp
