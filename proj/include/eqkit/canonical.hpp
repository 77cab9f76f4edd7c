#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "eqkit/graph.hpp"

namespace eqkit {

/// Largest order for which canonical codes fit in 64 bits.
inline constexpr std::size_t kCanonicalMaxOrder = 11;
/// Default cap for isomorphism-class enumeration.
inline constexpr std::size_t kEnumerationCap = 10;

/// Upper-triangle adjacency bits in graph6 order, first bit most significant.
/// For a fixed order n, a smaller code is a lexicographically smaller bit string.
using GraphCode = std::uint64_t;

namespace detail {

struct SmallGraph {
    std::size_t n = 0;
    std::vector<std::uint16_t> rows;

    explicit SmallGraph(const Graph& g) : n(g.order()), rows(g.order(), 0) {
        for (auto [u, v] : g.edges()) {
            rows[u] |= static_cast<std::uint16_t>(1U << v);
            rows[v] |= static_cast<std::uint16_t>(1U << u);
        }
    }
    bool adj(std::size_t u, std::size_t v) const { return (rows[u] >> v) & 1U; }
};

inline GraphCode encode_with_positions(const SmallGraph& g, const std::vector<int>& pos) {
    const std::size_t n = g.n;
    std::vector<std::size_t> at(n);
    for (std::size_t v = 0; v < n; ++v) at[static_cast<std::size_t>(pos[v])] = v;
    const std::size_t bits = n * (n - 1) / 2;
    GraphCode code = 0;
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i, ++k)
            if (g.adj(at[i], at[j])) code |= GraphCode{1} << (bits - 1 - k);
    return code;
}

/// Colour refinement to the coarsest equitable partition finer than `colors`.
/// New colours are ranks of (old colour, neighbour-colour histogram), so the
/// result is label independent and refines the ordered input partition.
inline void refine(const SmallGraph& g, std::vector<int>& colors) {
    const std::size_t n = g.n;
    int classes = 0;
    {
        std::vector<int> sorted(colors);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (auto& c : colors) c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
        classes = static_cast<int>(sorted.size());
    }
    while (true) {
        std::vector<std::vector<int>> sig(n, std::vector<int>(static_cast<std::size_t>(classes) + 1, 0));
        for (std::size_t v = 0; v < n; ++v) {
            sig[v][0] = colors[v];
            for (std::size_t w = 0; w < n; ++w)
                if (g.adj(v, w)) ++sig[v][static_cast<std::size_t>(colors[w]) + 1];
        }
        std::vector<std::vector<int>> distinct(sig);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (std::size_t v = 0; v < n; ++v)
            colors[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
        const int next = static_cast<int>(distinct.size());
        if (next == classes) return;
        classes = next;
    }
}

inline void canonical_search(const SmallGraph& g, std::vector<int> colors, GraphCode& best) {
    refine(g, colors);
    const std::size_t n = g.n;
    std::vector<int> count(n, 0);
    for (int c : colors) ++count[static_cast<std::size_t>(c)];
    int target = -1;
    for (std::size_t c = 0; c < n; ++c)
        if (count[c] > 1) {
            target = static_cast<int>(c);
            break;
        }
    if (target < 0) {
        best = std::min(best, encode_with_positions(g, colors));
        return;
    }
    // Twins in the target cell are swapped by an automorphism that fixes the
    // current colouring, so one representative per twin class suffices.
    std::vector<std::size_t> reps;
    for (std::size_t v = 0; v < n; ++v) {
        if (colors[v] != target) continue;
        bool twin = false;
        for (std::size_t r : reps) {
            const std::uint16_t mask = static_cast<std::uint16_t>(~((1U << v) | (1U << r)));
            if ((g.rows[v] & mask) == (g.rows[r] & mask)) {
                twin = true;
                break;
            }
        }
        if (!twin) reps.push_back(v);
    }
    for (std::size_t v : reps) {
        std::vector<int> next(n);
        for (std::size_t x = 0; x < n; ++x) next[x] = 2 * colors[x] + ((colors[x] == target && x != v) ? 1 : 0);
        canonical_search(g, std::move(next), best);
    }
}

}  // namespace detail

/// Canonical code: minimum code over the leaves of an individualisation-
/// refinement search. Isomorphic graphs, and only those, share a code.
inline GraphCode canonical_code(const Graph& g) {
    if (g.order() > kCanonicalMaxOrder) throw std::invalid_argument("canonical_code: order above " + std::to_string(kCanonicalMaxOrder));
    if (g.order() <= 1) return 0;
    detail::SmallGraph sg(g);
    GraphCode best = std::numeric_limits<GraphCode>::max();
    detail::canonical_search(sg, std::vector<int>(g.order(), 0), best);
    return best;
}

inline Graph graph_from_code(std::size_t n, GraphCode code) {
    Graph g(n);
    const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i, ++k)
            if ((code >> (bits - 1 - k)) & 1U) g.add_edge(i, j);
    return g;
}

inline Graph canonical_form(const Graph& g) { return graph_from_code(g.order(), canonical_code(g)); }

inline bool isomorphic(const Graph& a, const Graph& b) {
    return a.order() == b.order() && a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

namespace detail {

inline std::vector<GraphCode> extend_level(const std::vector<GraphCode>& parents, std::size_t parent_order, bool connected_only, unsigned jobs) {
    const std::size_t m = parent_order + 1;
    const std::uint32_t first_mask = connected_only ? 1U : 0U;
    const std::uint32_t end_mask = 1U << parent_order;
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(parents.size())));
    std::vector<std::vector<GraphCode>> partial(jobs);
    auto work = [&](unsigned worker) {
        auto& out = partial[worker];
        for (std::size_t idx = worker; idx < parents.size(); idx += jobs) {
            const Graph parent = graph_from_code(parent_order, parents[idx]);
            for (std::uint32_t mask = first_mask; mask < end_mask; ++mask) {
                Graph child(m);
                for (auto [u, v] : parent.edges()) child.add_edge(u, v);
                for (std::size_t u = 0; u < parent_order; ++u)
                    if ((mask >> u) & 1U) child.add_edge(u, parent_order);
                out.push_back(canonical_code(child));
            }
            if (out.size() > (std::size_t{1} << 22)) {
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    std::vector<GraphCode> merged;
    for (auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return merged;
}

}  // namespace detail

/// Canonical codes of all (or all connected) graphs of each order 1..nmax,
/// grown by adding one vertex at a time. Every connected graph has a non-cut
/// vertex, so the connected levels need only connected parents. Each level is
/// sorted by code, independent of the worker count.
inline std::vector<std::vector<GraphCode>> enumerate_levels(std::size_t nmax, bool connected_only, unsigned jobs = 1,
                                                            std::size_t cap = kEnumerationCap) {
    if (nmax < 1) throw std::invalid_argument("enumerate: order must be at least 1");
    if (nmax > cap || nmax > kCanonicalMaxOrder)
        throw std::invalid_argument("enumerate: order " + std::to_string(nmax) + " above the cap " + std::to_string(std::min(cap, kCanonicalMaxOrder)));
    std::vector<std::vector<GraphCode>> levels{{GraphCode{0}}};
    for (std::size_t m = 1; m < nmax; ++m) levels.push_back(detail::extend_level(levels.back(), m, connected_only, jobs));
    return levels;
}

/// One canonical representative per isomorphism class of connected graphs on n vertices.
inline std::vector<Graph> enumerate_connected(std::size_t n, unsigned jobs = 1, std::size_t cap = kEnumerationCap) {
    auto levels = enumerate_levels(n, true, jobs, cap);
    std::vector<Graph> out;
    out.reserve(levels.back().size());
    for (GraphCode c : levels.back()) out.push_back(graph_from_code(n, c));
    return out;
}

/// One canonical representative per isomorphism class of graphs on n vertices.
inline std::vector<Graph> enumerate_all(std::size_t n, unsigned jobs = 1, std::size_t cap = kEnumerationCap) {
    auto levels = enumerate_levels(n, false, jobs, cap);
    std::vector<Graph> out;
    out.reserve(levels.back().size());
    for (GraphCode c : levels.back()) out.push_back(graph_from_code(n, c));
    return out;
}

inline unsigned default_jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

}  // namespace eqkit
