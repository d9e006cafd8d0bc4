#include "chp/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chp {

namespace {

constexpr int kG6Lo = 63;   // '?'
constexpr int kG6Hi = 126;  // '~'

void encode_g6_number(std::string& out, long long n) {
    if (n < 0) throw GraphError("graph6: negative vertex count");
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kG6Lo));
    } else if (n <= 258047) {
        out.push_back(static_cast<char>(kG6Hi));
        out.push_back(static_cast<char>(((n >> 12) & 63) + kG6Lo));
        out.push_back(static_cast<char>(((n >> 6) & 63) + kG6Lo));
        out.push_back(static_cast<char>((n & 63) + kG6Lo));
    } else if (n <= 68719476735LL) {
        out.push_back(static_cast<char>(kG6Hi));
        out.push_back(static_cast<char>(kG6Hi));
        for (int shift = 30; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + kG6Lo));
    } else {
        throw GraphError("graph6: vertex count too large for the format");
    }
}

}  // namespace

std::string to_graph6(const Graph& g) {
    std::string out;
    long long n = g.num_vertices();
    encode_g6_number(out, n);
    // Upper triangle, column by column: (0,1),(0,2),(1,2),(0,3),...
    int acc = 0, nbits = 0;
    auto push_bit = [&](int bit) {
        acc = (acc << 1) | bit;
        if (++nbits == 6) {
            out.push_back(static_cast<char>(acc + kG6Lo));
            acc = 0;
            nbits = 0;
        }
    };
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) push_bit(g.adjacent(i, j) ? 1 : 0);
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + kG6Lo));
    return out;
}

Graph from_graph6(const std::string& text) {
    size_t pos = 0;
    const std::string header = ">>graph6<<";
    if (text.compare(0, header.size(), header) == 0) pos = header.size();

    size_t end = text.size();
    while (end > pos && (text[end - 1] == '\n' || text[end - 1] == '\r')) --end;
    if (pos >= end) throw ParseError("graph6: empty input", pos);

    auto byte_at = [&](size_t i) -> int {
        if (i >= end) throw ParseError("graph6: truncated input", i);
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < kG6Lo || c > kG6Hi)
            throw ParseError("graph6: byte outside printable range 63..126", i);
        return c - kG6Lo;
    };

    long long n = 0;
    if (text[pos] != '~') {
        n = byte_at(pos);
        pos += 1;
    } else if (pos + 1 < end && text[pos + 1] != '~') {
        n = (static_cast<long long>(byte_at(pos + 1)) << 12) |
            (static_cast<long long>(byte_at(pos + 2)) << 6) | byte_at(pos + 3);
        pos += 4;
    } else {
        n = 0;
        for (int i = 0; i < 6; ++i) n = (n << 6) | byte_at(pos + 2 + i);
        pos += 8;
    }
    if (n > 10'000'000)
        throw ParseError("graph6: vertex count " + std::to_string(n) + " implausibly large", pos);

    long long pairs = n * (n - 1) / 2;
    size_t need = static_cast<size_t>((pairs + 5) / 6);
    if (end - pos < need) throw ParseError("graph6: truncated adjacency data", end);
    if (end - pos > need) throw ParseError("graph6: trailing data", pos + need);

    std::vector<std::pair<int, int>> edges;
    long long bit_index = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit_index) {
            int b = byte_at(pos + bit_index / 6);
            if ((b >> (5 - bit_index % 6)) & 1) edges.emplace_back(i, j);
        }
    }
    return Graph::make(static_cast<int>(n), edges);
}

std::string to_dot(const Graph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (int v = 0; v < g.num_vertices(); ++v) {
        out << "  " << v;
        if (!g.labels().empty()) out << " [label=\"" << g.labels()[v] << "\"]";
        out << ";\n";
    }
    for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("json: ") + e.what(), e.byte);
    }
}

}  // namespace

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.num_vertices();
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
    if (!g.labels().empty()) j["labels"] = g.labels();
    return j.dump();
}

Graph graph_from_json(const std::string& text) {
    nlohmann::json j = parse_json(text);
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw ParseError("json graph: expected object with \"n\" and \"edges\"", 0);
    try {
        int n = j.at("n").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("json graph: each edge must be a pair", 0);
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return Graph::make(n, edges, std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json graph: ") + e.what(), 0);
    }
}

std::string decomposition_to_json(const TreeDecomposition& td) {
    nlohmann::json j;
    j["graph_n"] = td.graph_n;
    j["nodes"] = td.num_nodes();
    j["tree_edges"] = nlohmann::json::array();
    for (auto [a, b] : td.tree_edges) j["tree_edges"].push_back({a, b});
    j["bags"] = td.bags;
    if (!td.node_labels.empty()) j["node_labels"] = td.node_labels;
    return j.dump();
}

TreeDecomposition decomposition_from_json(const std::string& text) {
    nlohmann::json j = parse_json(text);
    try {
        TreeDecomposition td;
        td.graph_n = j.at("graph_n").get<int>();
        int nodes = j.at("nodes").get<int>();
        td.bags = j.at("bags").get<std::vector<VertexSet>>();
        if (static_cast<int>(td.bags.size()) != nodes)
            throw GraphError("json decomposition: node count does not match bag list");
        for (const auto& e : j.at("tree_edges"))
            td.tree_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        if (j.contains("node_labels"))
            td.node_labels = j.at("node_labels").get<std::vector<std::string>>();
        for (auto& bag : td.bags) std::sort(bag.begin(), bag.end());
        return td;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json decomposition: ") + e.what(), 0);
    }
}

std::string partition_to_json(const Partition& p) {
    nlohmann::json j;
    j["parts"] = p.parts;
    return j.dump();
}

Partition partition_from_json(const std::string& text, const Graph& g) {
    nlohmann::json j = parse_json(text);
    try {
        auto parts = j.at("parts").get<std::vector<VertexSet>>();
        return make_partition(g, std::move(parts));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json partition: ") + e.what(), 0);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GraphError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GraphError("cannot write " + path);
    out << content;
}

Graph read_graph_file(const std::string& path) {
    auto ends_with = [&](const std::string& suffix) {
        return path.size() >= suffix.size() &&
               path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    std::string text = read_text_file(path);
    if (ends_with(".json")) return graph_from_json(text);
    if (ends_with(".g6") || ends_with(".graph6")) return from_graph6(text);
    throw GraphError("unknown graph file extension (expected .g6, .graph6 or .json): " + path);
}

}  // namespace chp
