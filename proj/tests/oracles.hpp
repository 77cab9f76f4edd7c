#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "eqkit/eqkit.hpp"

namespace oracle {

using eqkit::Graph;
using eqkit::Vertex;

/// Minimum upper-triangle bit string over all n! relabelings (n <= 8).
inline std::uint64_t permutation_min_code(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    const std::size_t bits = n * (n > 0 ? n - 1 : 0) / 2;
    do {
        std::uint64_t code = 0;
        std::size_t k = 0;
        for (std::size_t j = 1; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i, ++k)
                if (g.adjacent(perm[i], perm[j])) code |= std::uint64_t{1} << (bits - 1 - k);
        best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Isomorphism classes on n vertices by brute force over all labeled graphs.
inline std::size_t count_classes(std::size_t n, bool connected_only) {
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<std::uint64_t> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
        Graph g(n);
        std::size_t k = 0;
        for (std::size_t j = 1; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i, ++k)
                if ((mask >> k) & 1U) g.add_edge(i, j);
        if (connected_only && !eqkit::is_connected(g)) continue;
        seen.push_back(permutation_min_code(g));
    }
    std::sort(seen.begin(), seen.end());
    return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

/// Smallest r-net size by exhaustive search over subsets (n <= 20).
inline std::size_t min_r_net(const Graph& g, int r) {
    const std::size_t n = g.order();
    std::vector<std::uint32_t> reach(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        auto dist = eqkit::bfs_distances(g, v, r);
        for (Vertex w = 0; w < n; ++w)
            if (dist[w] != eqkit::kUnreachable) reach[v] |= 1U << w;
    }
    const std::uint32_t all = (n == 32) ? ~0U : ((1U << n) - 1);
    std::size_t best = n;
    for (std::uint32_t s = 1; s < (1U << n); ++s) {
        const auto size = static_cast<std::size_t>(__builtin_popcount(s));
        if (size >= best) continue;
        std::uint32_t cov = 0;
        for (Vertex v = 0; v < n; ++v)
            if ((s >> v) & 1U) cov |= reach[v];
        if (cov == all) best = size;
    }
    return best;
}

/// Coefficients (low to high) of prod (x - lambda_i) from floating eigenvalues.
inline std::vector<double> poly_from_roots(const std::vector<double>& roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

/// Dense symmetric matrix power diagonal sum in long double (n small).
inline long double trace_power(const Graph& g, int k) {
    const std::size_t n = g.order();
    std::vector<long double> a(n * n, 0), p(n * n, 0);
    for (auto [u, v] : g.edges()) a[u * n + v] = a[v * n + u] = 1;
    for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1;
    for (int s = 0; s < k; ++s) {
        std::vector<long double> q(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t m = 0; m < n; ++m)
                if (p[i * n + m] != 0)
                    for (std::size_t j = 0; j < n; ++j) q[i * n + j] += p[i * n + m] * a[m * n + j];
        p = std::move(q);
    }
    long double t = 0;
    for (std::size_t i = 0; i < n; ++i) t += p[i * n + i];
    return t;
}

inline Graph random_graph(std::size_t n, double density, eqkit::Rng& rng) {
    Graph g(n);
    const auto threshold = static_cast<std::uint64_t>(density * 1000.0);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (eqkit::uniform_index(rng, 1000) < threshold) g.add_edge(i, j);
    return g;
}

struct PsdOracle {
    bool is_psd = false;
    std::size_t rank = 0;
};

/// Diagonally pivoted Cholesky in long double. Stops when every remaining
/// pivot is at most thresh; a PSD Schur complement with tiny diagonal has only
/// tiny entries, so a large leftover entry or a negative pivot refutes PSD.
inline PsdOracle pivoted_cholesky(const eqkit::SymMatrix& m, double thresh) {
    const std::size_t n = m.dim();
    std::vector<long double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    std::vector<bool> done(n, false);
    PsdOracle r{true, 0};
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && (p == n || a[i * n + i] > a[p * n + p])) p = i;
        if (a[p * n + p] <= thresh) break;
        done[p] = true;
        ++r.rank;
        const long double piv = a[p * n + p];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!done[i] && !done[j]) a[i * n + j] -= a[i * n + p] * a[p * n + j] / piv;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!done[i] && !done[j] && std::abs(a[i * n + j]) > 10 * thresh) r.is_psd = false;
    for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && a[i * n + i] < -thresh) r.is_psd = false;
    return r;
}

inline Graph relabeled(const Graph& g, const std::vector<Vertex>& perm) {
    Graph h(g.order());
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    return h;
}

}  // namespace oracle
