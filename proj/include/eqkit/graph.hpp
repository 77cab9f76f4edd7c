#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqkit {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free list of vertex labels.
using VertexSet = std::vector<Vertex>;

/// Simple undirected graph on vertices 0..n-1, stored as adjacency bit rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

    Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n) {
        for (auto [u, v] : edges) add_edge(u, v);
    }

    std::size_t order() const { return n_; }

    std::size_t size() const {
        std::size_t twice = 0;
        for (auto w : bits_) twice += static_cast<std::size_t>(std::popcount(w));
        return twice / 2;
    }

    bool adjacent(Vertex u, Vertex v) const {
        check(u);
        check(v);
        return (row(u)[v / 64] >> (v % 64)) & 1U;
    }

    void add_edge(Vertex u, Vertex v) {
        check(u);
        check(v);
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        set_bit(u, v, true);
        set_bit(v, u, true);
    }

    void remove_edge(Vertex u, Vertex v) {
        check(u);
        check(v);
        set_bit(u, v, false);
        set_bit(v, u, false);
    }

    void toggle_edge(Vertex u, Vertex v) {
        if (adjacent(u, v)) {
            remove_edge(u, v);
        } else {
            add_edge(u, v);
        }
    }

    std::size_t degree(Vertex v) const {
        check(v);
        std::size_t d = 0;
        const std::uint64_t* r = row(v);
        for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(r[w]));
        return d;
    }

    std::size_t max_degree() const {
        std::size_t m = 0;
        for (Vertex v = 0; v < n_; ++v) m = std::max(m, degree(v));
        return m;
    }

    std::vector<Vertex> neighbors(Vertex v) const {
        check(v);
        std::vector<Vertex> out;
        const std::uint64_t* r = row(v);
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = r[w];
            while (bits != 0) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    /// Number of common neighbours, via word-wise AND of bit rows.
    std::size_t common_neighbors(Vertex u, Vertex v) const {
        check(u);
        check(v);
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(row(u)[w] & row(v)[w]));
        return c;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

private:
    void check(Vertex v) const {
        if (v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range for graph of order " + std::to_string(n_));
    }
    const std::uint64_t* row(Vertex v) const { return bits_.data() + v * words_; }
    void set_bit(Vertex u, Vertex v, bool on) {
        std::uint64_t& w = bits_[u * words_ + v / 64];
        const std::uint64_t mask = std::uint64_t{1} << (v % 64);
        w = on ? (w | mask) : (w & ~mask);
    }

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Induced subgraph together with the map from its labels back to the host.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> origin;
};

inline VertexSet normalized(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline Subgraph induced_subgraph(const Graph& g, const VertexSet& vertices) {
    VertexSet keep = normalized(vertices);
    std::vector<std::size_t> index(g.order(), std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= g.order()) throw std::out_of_range("induced_subgraph: vertex out of range");
        index[keep[i]] = i;
    }
    Graph h(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (Vertex w : g.neighbors(keep[i]))
            if (index[w] != std::numeric_limits<std::size_t>::max() && i < index[w]) h.add_edge(i, index[w]);
    return {std::move(h), std::move(keep)};
}

inline constexpr int kUnreachable = -1;

/// BFS distances from `source`; kUnreachable for other components.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source, int max_depth = std::numeric_limits<int>::max()) {
    if (source >= g.order()) throw std::out_of_range("bfs_distances: vertex out of range");
    std::vector<int> dist(g.order(), kUnreachable);
    std::deque<Vertex> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        if (dist[u] >= max_depth) continue;
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

/// Vertices within distance `radius` of any vertex in `sources`.
inline VertexSet ball(const Graph& g, const VertexSet& sources, int radius) {
    std::vector<int> dist(g.order(), kUnreachable);
    std::deque<Vertex> queue;
    for (Vertex s : sources) {
        if (s >= g.order()) throw std::out_of_range("ball: vertex out of range");
        if (dist[s] == kUnreachable) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        if (dist[u] >= radius) continue;
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    VertexSet out;
    for (Vertex v = 0; v < g.order(); ++v)
        if (dist[v] != kUnreachable) out.push_back(v);
    return out;
}

/// The r-neighbourhood G_r(v): induced subgraph on vertices at distance <= r from v.
inline Subgraph neighborhood(const Graph& g, Vertex v, int r) {
    if (v >= g.order()) throw std::out_of_range("neighborhood: vertex " + std::to_string(v) + " out of range");
    if (r < 0) throw std::invalid_argument("neighborhood: negative radius");
    return induced_subgraph(g, ball(g, {v}, r));
}

inline Subgraph delete_vertices(const Graph& g, const VertexSet& removed) {
    std::vector<bool> gone(g.order(), false);
    for (Vertex v : removed) {
        if (v >= g.order()) throw std::out_of_range("delete_vertices: vertex out of range");
        gone[v] = true;
    }
    VertexSet keep;
    for (Vertex v = 0; v < g.order(); ++v)
        if (!gone[v]) keep.push_back(v);
    return induced_subgraph(g, keep);
}

inline std::vector<VertexSet> components(const Graph& g) {
    std::vector<bool> seen(g.order(), false);
    std::vector<VertexSet> out;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[s]) continue;
        auto dist = bfs_distances(g, s);
        VertexSet comp;
        for (Vertex v = 0; v < g.order(); ++v) {
            if (dist[v] != kUnreachable) {
                comp.push_back(v);
                seen[v] = true;
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const Graph& g) {
    if (g.order() == 0) return false;
    auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d == kUnreachable; });
}

/// Eccentricity maximum; requires a connected graph.
inline int diameter(const Graph& g) {
    int best = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
        auto dist = bfs_distances(g, v);
        for (int d : dist) {
            if (d == kUnreachable) throw std::invalid_argument("diameter: graph is disconnected");
            best = std::max(best, d);
        }
    }
    return best;
}

inline Graph complement(const Graph& g) {
    Graph h(g.order());
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = u + 1; v < g.order(); ++v)
            if (!g.adjacent(u, v)) h.add_edge(u, v);
    return h;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph h(a.order() + b.order());
    for (auto [u, v] : a.edges()) h.add_edge(u, v);
    for (auto [u, v] : b.edges()) h.add_edge(a.order() + u, a.order() + v);
    return h;
}

inline bool is_independent(const Graph& g, const VertexSet& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.adjacent(s[i], s[j])) return false;
    return true;
}

/// True iff every vertex lies within distance r of some member of `net`.
inline bool is_r_net(const Graph& g, const VertexSet& net, int r) {
    if (g.order() == 0) return true;
    if (net.empty()) return false;
    return ball(g, net, r).size() == g.order();
}

/// An r-net of size at most ceil(n/(r+1)) for a connected graph, by peeling a
/// BFS spanning tree rooted at vertex 0: take the deepest remaining vertex v
/// (smallest label on ties); if its depth is at most r the root closes the net,
/// otherwise add the ancestor u of v at distance r from v and discard u's subtree.
/// Members whose removal keeps the cover are then pruned.
inline VertexSet r_net(const Graph& g, int r) {
    if (g.order() == 0) throw std::invalid_argument("r_net: empty graph");
    if (r < 1) throw std::invalid_argument("r_net: radius must be positive");
    if (!is_connected(g)) throw std::invalid_argument("r_net: graph is disconnected");

    const std::size_t n = g.order();
    const Vertex root = 0;
    std::vector<int> depth(n, kUnreachable);
    std::vector<Vertex> parent(n, root);
    std::vector<Vertex> order{root};
    depth[root] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        Vertex u = order[head];
        for (Vertex w : g.neighbors(u)) {
            if (depth[w] == kUnreachable) {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                order.push_back(w);
            }
        }
    }
    std::vector<std::vector<Vertex>> children(n);
    for (Vertex v : order)
        if (v != root) children[parent[v]].push_back(v);

    std::vector<bool> alive(n, true);
    VertexSet net;
    while (true) {
        Vertex far = root;
        for (Vertex v = 0; v < n; ++v)
            if (alive[v] && depth[v] > depth[far]) far = v;
        if (depth[far] <= r) {
            net.push_back(root);
            break;
        }
        Vertex u = far;
        for (int step = 0; step < r; ++step) u = parent[u];
        net.push_back(u);
        std::vector<Vertex> stack{u};
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            alive[x] = false;
            for (Vertex c : children[x])
                if (alive[c]) stack.push_back(c);
        }
    }
    // Drop redundant members in label order; the cover is preserved throughout.
    net = normalized(std::move(net));
    for (std::size_t i = 0; i < net.size();) {
        VertexSet rest = net;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        if (is_r_net(g, rest, r)) {
            net = std::move(rest);
        } else {
            ++i;
        }
    }
    return net;
}

}  // namespace eqkit
