#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "eqkit/algebraic.hpp"
#include "eqkit/equiangular.hpp"
#include "eqkit/generators.hpp"
#include "eqkit/graph.hpp"

namespace eqkit {

inline constexpr int kIndependentSetRestarts = 50;

/// Graph with an edge wherever the inner product is negative. Every |product|
/// must lie within tol of alpha.
inline Graph associated_graph(const LineConfig& config, const Angle& angle, double tol = kInnerProductTol) {
    const std::size_t n = config.size();
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (config.vectors[i].size() != config.d) throw std::invalid_argument("associated_graph: vector " + std::to_string(i) + " has wrong length");
        for (std::size_t j = i + 1; j < n; ++j) {
            double ip = 0.0;
            for (std::size_t k = 0; k < config.d; ++k) ip += config.vectors[i][k] * config.vectors[j][k];
            if (std::abs(std::abs(ip) - angle.value()) > tol)
                throw std::domain_error("associated_graph: |<v" + std::to_string(i) + ", v" + std::to_string(j) + ">| = " + std::to_string(std::abs(ip)) +
                                        " is not alpha");
            if (ip < 0) g.add_edge(i, j);
        }
    }
    return g;
}

/// Negates the vectors indexed by S.
inline LineConfig switch_config(LineConfig config, const VertexSet& s) {
    for (Vertex v : s) {
        if (v >= config.size()) throw std::out_of_range("switch_config: vertex out of range");
    }
    for (Vertex v : normalized(s))
        for (double& x : config.vectors[v]) x = -x;
    return config;
}

/// The same switch on the graph: edges across (S, V \ S) are complemented.
inline Graph switch_graph(Graph g, const VertexSet& s) {
    std::vector<bool> in(g.order(), false);
    for (Vertex v : s) in.at(v) = true;
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = u + 1; v < g.order(); ++v)
            if (in[u] != in[v]) g.toggle_edge(u, v);
    return g;
}

/// C_X(A): vertices outside X adjacent to all of A and to none of X \ A.
inline VertexSet c_profile(const Graph& g, const VertexSet& x, const VertexSet& a) {
    const VertexSet xs = normalized(x);
    const VertexSet as = normalized(a);
    if (!std::includes(xs.begin(), xs.end(), as.begin(), as.end())) throw std::invalid_argument("c_profile: A is not a subset of X");
    for (Vertex v : xs)
        if (v >= g.order()) throw std::out_of_range("c_profile: vertex out of range");
    VertexSet out;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (std::binary_search(xs.begin(), xs.end(), v)) continue;
        bool ok = true;
        for (Vertex u : xs) {
            if (g.adjacent(u, v) != std::binary_search(as.begin(), as.end(), u)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(v);
    }
    return out;
}

namespace detail {

inline void clique_expand(const Graph& g, VertexSet& current, VertexSet candidates, VertexSet& best) {
    if (candidates.empty()) {
        if (current.size() > best.size()) best = current;
        return;
    }
    while (!candidates.empty()) {
        if (current.size() + candidates.size() <= best.size()) return;
        const Vertex v = candidates.back();
        candidates.pop_back();
        VertexSet next;
        for (Vertex u : candidates)
            if (g.adjacent(u, v)) next.push_back(u);
        current.push_back(v);
        clique_expand(g, current, std::move(next), best);
        current.pop_back();
    }
    if (current.size() > best.size()) best = current;
}

}  // namespace detail

/// Exact maximum clique by branch and bound; returns the vertices sorted.
inline VertexSet max_clique(const Graph& g) {
    VertexSet order(g.order());
    for (Vertex v = 0; v < g.order(); ++v) order[v] = v;
    // Highest degree last, so it is branched on first.
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    VertexSet current, best;
    detail::clique_expand(g, current, order, best);
    return normalized(best);
}

struct CliqueReport {
    std::size_t clique_number = 0;
    VertexSet clique;
    double bound = 0.0;  // 1/alpha + 1
    bool holds = false;
};

inline CliqueReport clique_bound_check(const LineConfig& config, const Angle& angle) {
    CliqueReport r;
    r.clique = max_clique(associated_graph(config, angle));
    r.clique_number = r.clique.size();
    r.bound = 1.0 / angle.value() + 1.0;
    r.holds = static_cast<double>(r.clique_number) <= r.bound + 1e-9;
    return r;
}

struct ProfileClass {
    VertexSet y;
    std::size_t size = 0;
    double explicit_bound = 0.0;  // lambda^2 (a + b + 2 lambda) / (ab - lambda^2); infinite when ab <= lambda^2
    bool holds = false;           // size <= M2 and size <= explicit_bound
};

struct IndependentLemmaReport {
    std::size_t x_size = 0;
    // (a): non-neighbours of X induce maximum degree <= ceil(lambda^2).
    std::size_t c_empty_size = 0;
    std::size_t c_empty_max_degree = 0;
    std::size_t degree_bound = 0;
    double a_threshold = 0.0;  // |X| above this forces (a)
    bool a_guaranteed = false;
    bool a_holds = false;
    // (b): every nonempty proper Y has |C_X(Y)| <= M2.
    std::size_t m2 = 0;
    std::size_t max_class = 0;
    std::vector<ProfileClass> classes;  // nonempty classes only, Y ascending
    bool b_holds = false;
    bool holds = false;
};

/// Checks both parts of the independent-set lemma exhaustively: vertices
/// outside X are bucketed by their neighbourhood in X, and the empty classes
/// satisfy (b) trivially.
inline IndependentLemmaReport independent_lemma_check(const Graph& g, const VertexSet& x, double lambda, std::size_t m2) {
    const VertexSet xs = normalized(x);
    for (Vertex v : xs)
        if (v >= g.order()) throw std::out_of_range("independent_lemma_check: vertex out of range");
    if (!is_independent(g, xs)) throw std::invalid_argument("independent_lemma_check: X is not independent");
    IndependentLemmaReport r;
    r.x_size = xs.size();
    r.m2 = m2;
    const double l2 = lambda * lambda;
    r.degree_bound = static_cast<std::size_t>(std::ceil(l2 - 1e-12));
    {
        const double dd = static_cast<double>(r.degree_bound + 1);
        const double gap = 2.0 * dd * std::sqrt(dd) - 2.0 * lambda * dd;
        r.a_threshold = gap > 0 ? lambda * std::pow(dd + std::sqrt(dd), 2) / gap : INFINITY;
        r.a_guaranteed = static_cast<double>(xs.size()) > r.a_threshold;
    }

    std::map<std::vector<bool>, VertexSet> buckets;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (std::binary_search(xs.begin(), xs.end(), v)) continue;
        std::vector<bool> key(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) key[i] = g.adjacent(v, xs[i]);
        buckets[key].push_back(v);
    }

    const std::vector<bool> none(xs.size(), false);
    const std::vector<bool> all(xs.size(), true);
    VertexSet c_empty;
    if (auto it = buckets.find(none); it != buckets.end()) c_empty = it->second;
    r.c_empty_size = c_empty.size();
    r.c_empty_max_degree = induced_subgraph(g, c_empty).graph.max_degree();
    r.a_holds = r.c_empty_max_degree <= r.degree_bound;

    r.b_holds = true;
    for (const auto& [key, members] : buckets) {
        if (key == none || key == all) continue;
        ProfileClass pc;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (key[i]) pc.y.push_back(xs[i]);
        pc.size = members.size();
        const double a = static_cast<double>(pc.y.size());
        const double b = static_cast<double>(xs.size() - pc.y.size());
        pc.explicit_bound = a * b > l2 ? l2 * (a + b + 2.0 * lambda) / (a * b - l2) : INFINITY;
        pc.holds = pc.size <= m2 && static_cast<double>(pc.size) <= pc.explicit_bound + 1e-9;
        r.max_class = std::max(r.max_class, pc.size);
        r.b_holds = r.b_holds && pc.holds;
        r.classes.push_back(std::move(pc));
    }
    std::sort(r.classes.begin(), r.classes.end(), [](const ProfileClass& p, const ProfileClass& q) { return p.y < q.y; });
    r.holds = r.a_holds && r.b_holds;
    return r;
}

/// Parameters of the degree-bounding switch.
struct SwitchParams {
    std::size_t m0 = 0;  // clique size excluded by the clique bound
    std::size_t m1 = 0;  // V_1 has 2 * m1 vertices
    std::size_t m2 = 0;  // cap on every nonempty profile class
    double delta_target = 0.0;  // ceil(lambda^2) + 2 m1 + 2^{2 m1} m2

    /// m0 = ceil(1/alpha) + 2, m1 = max(8, ceil(lambda^2) + 2),
    /// m2 = ceil(lambda^2 (2 m1 + 2 lambda)).
    static SwitchParams defaults(const Angle& angle, std::size_t m1_override = 0, std::size_t m2_override = 0) {
        SwitchParams p;
        const double lambda = angle.lambda();
        const double l2 = lambda * lambda;
        p.m0 = static_cast<std::size_t>(std::ceil(1.0 / angle.value() - 1e-12)) + 2;
        p.m1 = m1_override ? m1_override : std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(l2 - 1e-12)) + 2);
        p.m2 = m2_override ? m2_override : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(l2 * (2.0 * p.m1 + 2.0 * lambda) - 1e-9)));
        p.delta_target = std::ceil(l2 - 1e-12) + 2.0 * p.m1 + std::ldexp(static_cast<double>(p.m2), static_cast<int>(2 * p.m1));
        return p;
    }
};

struct SwitchResult {
    std::vector<int> signs;
    LineConfig switched_config;
    Graph associated_graph;
    std::size_t max_degree = 0;
    std::size_t initial_max_degree = 0;
    VertexSet v1;
    SwitchParams params;
    std::vector<std::string> log;
};

namespace detail {

/// Greedy independent set over a degree-sorted random order, then 1-for-2 swaps
/// until none applies.
inline VertexSet independent_set_attempt(const Graph& g, Rng& rng) {
    const std::size_t n = g.order();
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    shuffle_in_place(order, rng);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });

    std::vector<bool> in(n, false);
    std::vector<std::size_t> tight(n, 0);  // neighbours inside the set
    auto add = [&](Vertex v) {
        in[v] = true;
        for (Vertex w : g.neighbors(v)) ++tight[w];
    };
    auto drop = [&](Vertex v) {
        in[v] = false;
        for (Vertex w : g.neighbors(v)) --tight[w];
    };
    for (Vertex v : order)
        if (tight[v] == 0) add(v);

    bool improved = true;
    while (improved) {
        improved = false;
        for (Vertex x = 0; x < n && !improved; ++x) {
            if (!in[x]) continue;
            std::vector<Vertex> loose;
            for (Vertex w : g.neighbors(x))
                if (!in[w] && tight[w] == 1) loose.push_back(w);
            for (std::size_t i = 0; i < loose.size() && !improved; ++i) {
                for (std::size_t j = i + 1; j < loose.size(); ++j) {
                    if (g.adjacent(loose[i], loose[j])) continue;
                    drop(x);
                    add(loose[i]);
                    add(loose[j]);
                    for (Vertex v : order)
                        if (!in[v] && tight[v] == 0) add(v);
                    improved = true;
                    break;
                }
            }
        }
    }
    VertexSet out;
    for (Vertex v = 0; v < n; ++v)
        if (in[v]) out.push_back(v);
    return out;
}

}  // namespace detail

/// Largest independent set over seeded restarts; ties go to the
/// lexicographically smallest set, so the result ignores the worker count.
inline VertexSet find_independent_set(const Graph& g, std::uint64_t seed, int restarts = kIndependentSetRestarts, unsigned jobs = 1) {
    std::vector<VertexSet> found(static_cast<std::size_t>(restarts));
    auto run = [&](unsigned worker, unsigned stride) {
        for (int i = static_cast<int>(worker); i < restarts; i += static_cast<int>(stride)) {
            Rng rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1));
            found[static_cast<std::size_t>(i)] = detail::independent_set_attempt(g, rng);
        }
    };
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max(restarts, 1))));
    if (jobs == 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(run, w, jobs);
        for (auto& t : pool) t.join();
    }
    VertexSet best;
    bool have = false;
    for (auto& s : found) {
        if (!have || s.size() > best.size() || (s.size() == best.size() && s < best)) {
            best = s;
            have = true;
        }
    }
    return best;
}

/// Degree-bounding switch: pick an independent V_1 of size 2 m1, then negate
/// every vector outside V_1 adjacent to strictly more than m1 members of V_1.
inline SwitchResult bounded_degree_switch(const LineConfig& config, const Angle& angle, const SwitchParams& params, std::uint64_t seed = 0,
                                          unsigned jobs = 1) {
    if (params.m1 == 0) throw std::invalid_argument("bounded_degree_switch: m1 must be positive");
    const ValidationReport check = validate(config, angle);
    if (!check.valid) throw std::invalid_argument("bounded_degree_switch: invalid configuration: " + check.violations.front());
    SwitchResult r;
    r.params = params;
    r.signs.assign(config.size(), 1);
    r.switched_config = config;
    r.associated_graph = check.associated;
    r.initial_max_degree = r.max_degree = check.associated.max_degree();

    const Graph& g = check.associated;
    const VertexSet independent = find_independent_set(g, seed, kIndependentSetRestarts, jobs);
    r.log.push_back("largest independent set found: " + std::to_string(independent.size()) + " vertices");
    if (independent.size() < 2 * params.m1) {
        r.log.push_back("no independent set of size 2*m1 = " + std::to_string(2 * params.m1) + "; configuration left unchanged");
        return r;
    }
    r.v1.assign(independent.begin(), independent.begin() + static_cast<std::ptrdiff_t>(2 * params.m1));
    std::vector<bool> in_v1(g.order(), false);
    for (Vertex v : r.v1) in_v1[v] = true;

    VertexSet negate;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (in_v1[v]) continue;
        std::size_t hits = 0;
        for (Vertex u : r.v1) hits += g.adjacent(u, v) ? 1 : 0;
        if (hits > params.m1) negate.push_back(v);
    }
    for (Vertex v : negate) r.signs[v] = -1;
    r.log.push_back("negated " + std::to_string(negate.size()) + " vectors adjacent to more than half of V_1");
    r.switched_config = switch_config(config, negate);
    r.associated_graph = associated_graph(r.switched_config, angle);
    r.max_degree = r.associated_graph.max_degree();
    r.log.push_back("max degree " + std::to_string(r.initial_max_degree) + " -> " + std::to_string(r.max_degree));
    return r;
}

}  // namespace eqkit
