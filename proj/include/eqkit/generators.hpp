#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqkit/graph.hpp"

namespace eqkit {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound); identical streams on every platform, unlike
/// std::uniform_int_distribution.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

inline Graph empty_graph(std::size_t n) { return Graph(n); }

inline Graph complete_graph(std::size_t k) {
    Graph g(k);
    for (Vertex u = 0; u < k; ++u)
        for (Vertex v = u + 1; v < k; ++v) g.add_edge(u, v);
    return g;
}

inline Graph path_graph(std::size_t n) {
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
    return g;
}

inline Graph cycle_graph(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

/// K_{1,D}: centre 0 joined to leaves 1..D.
inline Graph star_graph(std::size_t leaves) {
    Graph g(leaves + 1);
    for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

inline Graph petersen_graph() {
    Graph g(10);
    for (Vertex i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer cycle
        g.add_edge(i, i + 5);                // spokes
        g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    }
    return g;
}

/// `copies` disjoint copies of h followed by `isolated` isolated vertices.
inline Graph repeated_union(const Graph& h, std::size_t copies, std::size_t isolated = 0) {
    Graph g(h.order() * copies + isolated);
    for (std::size_t c = 0; c < copies; ++c)
        for (auto [u, v] : h.edges()) g.add_edge(c * h.order() + u, c * h.order() + v);
    return g;
}

/// Uniform-ish random d-regular graph by the pairing model, rejecting pairings
/// with loops or multi-edges.
inline Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed, int max_attempts = 100000) {
    if (d >= n && n > 0) throw std::invalid_argument("random_regular: degree must be below vertex count");
    if ((n * d) % 2 != 0) throw std::invalid_argument("random_regular: n*d must be even");
    Rng rng(seed);
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t k = 0; k < d; ++k) points.push_back(v);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        shuffle_in_place(points, rng);
        Graph g(n);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
            Vertex u = points[i];
            Vertex v = points[i + 1];
            if (u == v || g.adjacent(u, v)) {
                ok = false;
                break;
            }
            g.add_edge(u, v);
        }
        if (ok) return g;
    }
    throw std::runtime_error("random_regular: no simple pairing found within the attempt budget");
}

/// Random connected graph with maximum degree at most `max_degree`: a random
/// degree-capped spanning tree plus up to `extra_edges` random chords.
inline Graph random_connected_bounded(std::size_t n, std::size_t max_degree, std::size_t extra_edges, Rng& rng) {
    if (n == 0) throw std::invalid_argument("random_connected_bounded: empty graph");
    if (max_degree < 2 && n > 2) throw std::invalid_argument("random_connected_bounded: max_degree too small");
    Graph g(n);
    std::vector<Vertex> open{0};
    for (Vertex v = 1; v < n; ++v) {
        std::size_t pick = uniform_index(rng, open.size());
        Vertex u = open[pick];
        g.add_edge(u, v);
        if (g.degree(u) >= max_degree) {
            open[pick] = open.back();
            open.pop_back();
        }
        if (g.degree(v) < max_degree) open.push_back(v);
    }
    for (std::size_t tries = 0, added = 0; added < extra_edges && tries < 50 * (extra_edges + 1); ++tries) {
        Vertex u = uniform_index(rng, n);
        Vertex v = uniform_index(rng, n);
        if (u == v || g.adjacent(u, v) || g.degree(u) >= max_degree || g.degree(v) >= max_degree) continue;
        g.add_edge(u, v);
        ++added;
    }
    return g;
}

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

/// Paley graph on Z_p: x ~ y iff x - y is a nonzero square mod p.
inline Graph paley(std::uint64_t p) {
    if (!is_prime(p) || p % 4 != 1) throw std::invalid_argument("paley: need a prime p = 1 (mod 4), got " + std::to_string(p));
    std::vector<bool> square(p, false);
    for (std::uint64_t x = 1; x < p; ++x) square[(x * x) % p] = true;
    Graph g(p);
    for (Vertex x = 0; x < p; ++x)
        for (Vertex y = x + 1; y < p; ++y)
            if (square[(y - x) % p]) g.add_edge(x, y);
    return g;
}

namespace detail {

struct Mat2 {
    std::array<std::uint64_t, 4> e;  // row-major a b / c d over Z_p
    auto operator<=>(const Mat2&) const = default;
};

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return result;
}

inline Mat2 multiply(const Mat2& x, const Mat2& y, std::uint64_t p) {
    return {{(x.e[0] * y.e[0] + x.e[1] * y.e[2]) % p, (x.e[0] * y.e[1] + x.e[1] * y.e[3]) % p,
             (x.e[2] * y.e[0] + x.e[3] * y.e[2]) % p, (x.e[2] * y.e[1] + x.e[3] * y.e[3]) % p}};
}

/// Scales so the first nonzero entry (row-major) is 1; identifies M with -M.
inline Mat2 canonical(const Mat2& m, std::uint64_t p) {
    std::uint64_t lead = 0;
    for (auto x : m.e)
        if (x != 0) {
            lead = x;
            break;
        }
    const std::uint64_t s = inverse_mod(lead, p);
    return {{m.e[0] * s % p, m.e[1] * s % p, m.e[2] * s % p, m.e[3] * s % p}};
}

}  // namespace detail

/// Cayley graph of PSL(2,p) on the generators [[1,1],[0,1]], [[1,0],[1,1]] and
/// their inverses. Vertices are numbered in BFS order from the identity.
inline Graph psl2_cayley(std::uint64_t p) {
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("psl2_cayley: need a prime p >= 5, got " + std::to_string(p));
    using detail::Mat2;
    const std::array<Mat2, 4> gens{{{{1, 1, 0, 1}}, {{1, p - 1, 0, 1}}, {{1, 0, 1, 1}}, {{1, 0, p - 1, 1}}}};
    std::map<Mat2, Vertex> index;
    std::vector<Mat2> elements{Mat2{{1, 0, 0, 1}}};
    index.emplace(elements[0], 0);
    std::vector<Edge> edges;
    for (std::size_t head = 0; head < elements.size(); ++head) {
        const Mat2 g = elements[head];
        for (const auto& s : gens) {
            Mat2 h = detail::canonical(detail::multiply(g, s, p), p);
            auto [it, inserted] = index.emplace(h, elements.size());
            if (inserted) elements.push_back(h);
            if (head < it->second) edges.emplace_back(head, it->second);
        }
    }
    return Graph(elements.size(), edges);
}

}  // namespace eqkit
