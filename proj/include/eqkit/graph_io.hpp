#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "eqkit/graph.hpp"

namespace eqkit {

// graph6: N(n) followed by the upper triangle x(0,1) x(0,2) x(1,2) x(0,3) ...
// packed six bits per byte (big-endian within the group), each byte offset by 63.

inline std::string to_graph6(const Graph& g) {
    const std::size_t n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
    } else if (n <= 68719476735ULL) {
        out.push_back(126);
        out.push_back(126);
        for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
    } else {
        throw std::invalid_argument("to_graph6: graph too large");
    }
    int acc = 0;
    int filled = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(63 + acc));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
    return out;
}

inline Graph from_graph6(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    constexpr std::string_view header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) s.erase(0, header.size());
    if (s.empty()) throw std::invalid_argument("graph6: empty input");
    for (char c : s)
        if (c < 63 || c > 126) throw std::invalid_argument("graph6: byte outside 63..126");

    std::size_t pos = 0;
    auto next = [&]() -> std::size_t {
        if (pos >= s.size()) throw std::invalid_argument("graph6: truncated input");
        return static_cast<std::size_t>(s[pos++] - 63);
    };
    std::size_t n = 0;
    if (s[0] != 126) {
        n = next();
    } else if (s.size() > 1 && s[1] != 126) {
        pos = 1;
        for (int k = 0; k < 3; ++k) n = (n << 6) | next();
    } else {
        pos = 2;
        for (int k = 0; k < 6; ++k) n = (n << 6) | next();
    }
    const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    const std::size_t expected = (bits + 5) / 6;
    if (s.size() - pos != expected)
        throw std::invalid_argument("graph6: expected " + std::to_string(expected) + " data bytes, found " + std::to_string(s.size() - pos));
    Graph g(n);
    std::size_t k = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i, ++k) {
            const std::size_t byte = static_cast<std::size_t>(s[pos + k / 6] - 63);
            if ((byte >> (5 - k % 6)) & 1U) g.add_edge(i, j);
        }
    }
    if (bits % 6 != 0) {
        const std::size_t last = static_cast<std::size_t>(s.back() - 63);
        if ((last & ((1U << (6 - bits % 6)) - 1)) != 0) throw std::invalid_argument("graph6: nonzero padding bits");
    }
    return g;
}

inline nlohmann::json to_edge_list_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return {{"n", g.order()}, {"edges", edges}};
}

inline Graph from_edge_list_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) throw std::invalid_argument("edge-list JSON needs keys 'n' and 'edges'");
    const auto n = j.at("n").get<std::size_t>();
    Graph g(n);
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge-list JSON: each edge must be [u, v]");
        g.add_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return g;
}

/// Reads a graph file: edge-list JSON when the content starts with '{',
/// otherwise the first graph6 line.
inline Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("graph file '" + path + "' is empty");
    if (content[first] == '{') return from_edge_list_json(nlohmann::json::parse(content));
    std::istringstream lines(content.substr(first));
    std::string line;
    std::getline(lines, line);
    return from_graph6(line);
}

}  // namespace eqkit
