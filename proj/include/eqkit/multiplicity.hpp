#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "eqkit/algebraic.hpp"
#include "eqkit/charpoly.hpp"
#include "eqkit/graph.hpp"
#include "eqkit/linalg.hpp"
#include "eqkit/numeric.hpp"

namespace eqkit {

/// Included and excluded eigenvalues must be more than this many tolerances apart.
inline constexpr double kClusterGapFactor = 3.0;
inline constexpr double kSecondMultiplicityTol = 1e-7;
inline constexpr double kLedgerRelTol = 1e-9;
inline constexpr std::size_t kExactWalkCap = 64;

class AmbiguousCluster : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Number of values within tol of target. Throws AmbiguousCluster when an
/// included and an excluded value are within 3 tol of each other.
inline std::size_t multiplicity(const std::vector<double>& values, double target, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("multiplicity: tolerance must be positive");
    std::vector<double> in, out;
    for (double x : values) (std::abs(x - target) <= tol ? in : out).push_back(x);
    for (double a : in)
        for (double b : out)
            if (std::abs(a - b) <= kClusterGapFactor * tol)
                throw AmbiguousCluster("multiplicity: eigenvalue " + std::to_string(b) + " sits within 3*tol of the cluster at " + std::to_string(target));
    return in.size();
}

inline std::size_t multiplicity(const Graph& g, double target, double tol) { return multiplicity(graph_eigenvalues(g), target, tol); }

/// Multiplicity of lambda as a root of det(xI - A_G): divide out
/// gcd(charpoly, minpoly) while it still vanishes at lambda.
inline std::size_t multiplicity_exact(const Graph& g, const AlgebraicNumber& lambda, std::size_t cap = kExactCap) {
    if (g.order() == 0) return 0;
    IntPolynomial q = charpoly_exact(g, cap);
    std::size_t count = 0;
    while (q.degree() >= 1) {
        const IntPolynomial d = gcd(q, lambda.minpoly());
        if (d.degree() < 1 || sturm_count(d, lambda.lo(), lambda.hi()) == 0) break;
        auto next = exact_quotient(q, d);
        if (!next) throw std::logic_error("multiplicity_exact: gcd does not divide the charpoly");
        q = std::move(*next);
        ++count;
    }
    return count;
}

struct SecondEigenvalue {
    double lambda2 = 0.0;
    std::size_t multiplicity = 0;
    double tolerance = 0.0;
};

inline SecondEigenvalue second_multiplicity(const Graph& g) {
    if (g.order() < 2) throw std::invalid_argument("second_multiplicity: need at least 2 vertices");
    if (!is_connected(g)) throw std::invalid_argument("second_multiplicity: graph is disconnected");
    const auto values = graph_eigenvalues(g);
    SecondEigenvalue r;
    r.lambda2 = values[1];
    r.tolerance = kSecondMultiplicityTol * std::max(1.0, values[0]);
    r.multiplicity = multiplicity(values, r.lambda2, r.tolerance);
    return r;
}

/// One named inequality lhs <= rhs. holds allows a relative slack of
/// kLedgerRelTol * max(1, |lhs|, |rhs|).
struct LedgerEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    bool holds = false;
    bool asymptotic = false;  // informative only; excluded from the verdict
};

inline LedgerEntry ledger_entry(std::string name, double lhs, double rhs, bool asymptotic = false) {
    LedgerEntry e{std::move(name), lhs, rhs, rhs - lhs, false, asymptotic};
    e.holds = e.slack >= -kLedgerRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return e;
}

namespace detail {

inline void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += jobs) body(i);
        });
    for (auto& t : pool) t.join();
}

/// lambda_1(G_r(v)) for every v; balls covering the whole graph reuse lambda_1(G).
inline std::vector<double> ball_radii(const Graph& g, int r, unsigned jobs) {
    std::vector<double> out(g.order(), 0.0);
    const double whole = spectral_radius(g);
    parallel_for(g.order(), jobs, [&](std::size_t v) {
        const Subgraph ball_v = neighborhood(g, v, r);
        out[v] = ball_v.graph.order() == g.order() ? whole : spectral_radius(ball_v.graph);
    });
    return out;
}

inline std::vector<std::vector<Integer>> integer_adjacency(const Graph& g) {
    std::vector<std::vector<Integer>> a(g.order(), std::vector<Integer>(g.order(), 0));
    for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
    return a;
}

inline std::vector<std::vector<Integer>> multiply(const std::vector<std::vector<Integer>>& x, const std::vector<std::vector<Integer>>& y) {
    const std::size_t n = x.size();
    std::vector<std::vector<Integer>> z(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (x[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
        }
    return z;
}

}  // namespace detail

/// trace(A^k) by exact repeated squaring.
inline Integer closed_walks_trace(const Graph& g, int k) {
    if (k < 0) throw std::invalid_argument("closed_walks_trace: negative length");
    const std::size_t n = g.order();
    std::vector<std::vector<Integer>> result(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) result[i][i] = 1;
    auto base = detail::integer_adjacency(g);
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) result = detail::multiply(result, base);
        if (e > 1) base = detail::multiply(base, base);
    }
    Integer t = 0;
    for (std::size_t i = 0; i < n; ++i) t += result[i][i];
    return t;
}

/// Closed walks of length k from v, counted inside G_{ceil(k/2)}(v) by
/// propagating a walk-count vector.
inline Integer closed_walks_from(const Graph& g, Vertex v, int k) {
    const Subgraph ball_v = neighborhood(g, v, (k + 1) / 2);
    const Graph& h = ball_v.graph;
    const auto pos = std::lower_bound(ball_v.origin.begin(), ball_v.origin.end(), v) - ball_v.origin.begin();
    std::vector<Integer> x(h.order(), 0);
    x[static_cast<std::size_t>(pos)] = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<Integer> y(h.order(), 0);
        for (auto [a, b] : h.edges()) {
            y[a] += x[b];
            y[b] += x[a];
        }
        x = std::move(y);
    }
    return x[static_cast<std::size_t>(pos)];
}

struct NetDeletionReport {
    int r = 0;
    VertexSet net;
    std::size_t h_order = 0;
    bool skipped = false;  // H empty
    LedgerEntry entry;     // lambda_1(H)^{2r} <= lambda_1(G)^{2r} - 1
};

inline NetDeletionReport net_deletion_check(const Graph& g, int r) {
    NetDeletionReport rep;
    rep.r = r;
    rep.net = r_net(g, r);
    const Subgraph h = delete_vertices(g, rep.net);
    rep.h_order = h.graph.order();
    const double lg = spectral_radius(g);
    if (h.graph.order() == 0) {
        rep.skipped = true;
        rep.entry = ledger_entry("net_deletion", 0.0, std::pow(lg, 2 * r) - 1.0);
        rep.entry.holds = true;
        return rep;
    }
    rep.entry = ledger_entry("net_deletion", std::pow(spectral_radius(h.graph), 2 * r), std::pow(lg, 2 * r) - 1.0);
    return rep;
}

struct WalkBoundReport {
    int r = 0;
    bool exact = false;            // integer path taken (n <= 64)
    std::string trace_exact;       // trace(A^{2r}) in decimal, when exact
    std::string ball_walks_exact;  // sum over v of closed 2r-walks inside G_r(v), when exact
    bool walk_count_matches = true;
    double lhs_spectral = 0.0;     // sum_i lambda_i^{2r}
    double spectral_rel_error = 0.0;
    LedgerEntry entry;             // LHS <= sum_v lambda_1(G_r(v))^{2r}
};

inline WalkBoundReport walk_bound_check(const Graph& g, int r, unsigned jobs = 1) {
    if (r < 1) throw std::invalid_argument("walk_bound_check: r must be positive");
    WalkBoundReport rep;
    rep.r = r;
    double lhs_spectral = 0.0;
    for (double x : graph_eigenvalues(g)) lhs_spectral += std::pow(x, 2 * r);
    rep.lhs_spectral = lhs_spectral;
    double lhs = lhs_spectral;
    if (g.order() <= kExactWalkCap) {
        rep.exact = true;
        const Integer t = closed_walks_trace(g, 2 * r);
        std::vector<Integer> per(g.order());
        detail::parallel_for(g.order(), jobs, [&](std::size_t v) { per[v] = closed_walks_from(g, v, 2 * r); });
        Integer s = 0;
        for (const auto& x : per) s += x;
        rep.trace_exact = t.str();
        rep.ball_walks_exact = s.str();
        rep.walk_count_matches = (s == t);
        lhs = to_double(t);
        rep.spectral_rel_error = std::abs(lhs_spectral - lhs) / std::max(1.0, std::abs(lhs));
    }
    double rhs = 0.0;
    for (double x : detail::ball_radii(g, r, jobs)) rhs += std::pow(x, 2 * r);
    rep.entry = ledger_entry("closed_walks", lhs, rhs);
    return rep;
}

/// Eigenvalues of G - v interlace those of G.
struct InterlacingReport {
    Vertex removed = 0;
    double max_violation = 0.0;
    bool holds = false;
};

inline InterlacingReport interlacing_check(const Graph& g, Vertex v, double tol = 1e-9) {
    if (g.order() < 2) throw std::invalid_argument("interlacing_check: need at least 2 vertices");
    const auto big = graph_eigenvalues(g);
    const auto small = graph_eigenvalues(delete_vertices(g, {v}).graph);
    InterlacingReport r;
    r.removed = v;
    for (std::size_t i = 0; i < small.size(); ++i) {
        r.max_violation = std::max(r.max_violation, small[i] - big[i]);
        r.max_violation = std::max(r.max_violation, big[i + 1] - small[i]);
    }
    r.holds = r.max_violation <= tol * std::max(1.0, big.front());
    return r;
}

struct TraceParams {
    std::size_t j = 2;
    double c = 1.0;
    int r1 = 0;  // floor(c ln ln n)
    int r2 = 0;  // floor(c ln n)
    int r = 0;
};

struct TraceReport {
    TraceParams params;
    double lambda = 0.0;  // lambda_j(G)
    double tolerance = 0.0;
    bool bounded_branch = false;  // lambda_j <= 0
    std::size_t max_degree = 0;
    VertexSet u, u0, v0;
    Graph h;
    std::vector<Vertex> h_origin;
    std::size_t multiplicity_in_g = 0;
    std::size_t multiplicity_in_h = 0;
    std::vector<LedgerEntry> ledger;

    /// Every non-asymptotic ledger entry holds.
    bool holds() const {
        return std::all_of(ledger.begin(), ledger.end(), [](const LedgerEntry& e) { return e.asymptotic || e.holds; });
    }
};

/// Radii for the trace; throws with a diagnostic when either collapses to 0.
inline TraceParams trace_params(std::size_t n, std::size_t j, double c) {
    if (!(c > 0)) throw std::invalid_argument("proof_trace: c must be positive");
    TraceParams p;
    p.j = j;
    p.c = c;
    const double ln = std::log(static_cast<double>(n));
    const double lnln = n > 2 ? std::log(ln) : 0.0;
    p.r1 = static_cast<int>(std::floor(c * lnln));
    p.r2 = static_cast<int>(std::floor(c * ln));
    p.r = p.r1 + p.r2;
    if (p.r1 < 1 || p.r2 < 1)
        throw std::domain_error("proof_trace: radii collapse for n = " + std::to_string(n) + ", c = " + std::to_string(c) + " (r1 = " + std::to_string(p.r1) +
                                ", r2 = " + std::to_string(p.r2) + "); need c >= " + std::to_string(lnln > 0 ? 1.0 / lnln : INFINITY));
    return p;
}

/// Runs the multiplicity argument on a concrete graph and records each inequality.
inline TraceReport proof_trace(const Graph& g, std::size_t j, double c, unsigned jobs = 1) {
    const std::size_t n = g.order();
    if (n == 0 || !is_connected(g)) throw std::invalid_argument("proof_trace: graph must be connected and nonempty");
    if (j < 1 || j > n) throw std::invalid_argument("proof_trace: j must lie in 1..n");
    const auto values = graph_eigenvalues(g);
    TraceReport rep;
    rep.params.j = j;
    rep.params.c = c;
    rep.lambda = values[j - 1];
    rep.max_degree = g.max_degree();
    rep.tolerance = kSecondMultiplicityTol * std::max(1.0, values.front());
    const double lambda = rep.lambda;
    const double delta = static_cast<double>(rep.max_degree);

    if (lambda <= 0) {
        rep.bounded_branch = true;
        double sq = 0.0;
        for (double x : values) sq += x * x;
        const double two_e = 2.0 * static_cast<double>(g.size());
        rep.ledger.push_back(ledger_entry("sum_squares_equals_2E", std::abs(sq - two_e), kLedgerRelTol * std::max(1.0, two_e)));
        rep.ledger.push_back(ledger_entry("bounded_size", two_e, static_cast<double>(j * j) * delta * delta));
        rep.multiplicity_in_g = multiplicity(values, lambda, rep.tolerance);
        return rep;
    }

    rep.params = trace_params(n, j, c);
    const int r1 = rep.params.r1;
    const int r2 = rep.params.r2;
    const int r = rep.params.r;
    // Membership in U needs a margin so lambda_1(G_r(v)) = lambda is not admitted by rounding.
    const double margin = kLedgerRelTol * std::max(1.0, values.front());

    const auto big_radii = detail::ball_radii(g, r, jobs);
    for (Vertex v = 0; v < n; ++v)
        if (big_radii[v] > lambda + margin) rep.u.push_back(v);

    // Greedy by label: keep u when it is at distance >= 2(r+1) from every kept vertex.
    std::vector<bool> blocked(n, false);
    for (Vertex v : rep.u) {
        if (blocked[v]) continue;
        rep.u0.push_back(v);
        for (Vertex w : ball(g, {v}, 2 * r + 1)) blocked[w] = true;
    }

    {
        const Subgraph around = induced_subgraph(g, ball(g, rep.u0, r));
        const double top = rep.u0.empty() ? INFINITY : graph_eigenvalues(around.graph)[rep.u0.size() - 1];
        if (!rep.u0.empty()) rep.ledger.push_back(ledger_entry("lambda_j_below_lambda_U0_of_balls", lambda, top));
        rep.ledger.push_back(ledger_entry("U0_below_j", static_cast<double>(rep.u0.size()), static_cast<double>(j - 1)));
        rep.ledger.push_back(ledger_entry("U_within_U0_balls", static_cast<double>(rep.u.size()),
                                          static_cast<double>(rep.u0.size()) * std::pow(delta, 2.0 * (r + 1))));
        std::size_t covered = 0;
        const VertexSet reach = ball(g, rep.u0, 2 * r + 1);
        for (Vertex v : rep.u) covered += std::binary_search(reach.begin(), reach.end(), v) ? 1 : 0;
        rep.ledger.push_back(ledger_entry("U_covered_by_U0", static_cast<double>(rep.u.size() - covered), 0.0));
    }

    rep.v0 = r_net(g, r1);
    rep.ledger.push_back(ledger_entry("V0_size", static_cast<double>(rep.v0.size()), std::ceil(static_cast<double>(n) / (r1 + 1))));
    rep.ledger.push_back(ledger_entry("V0_uncovered", static_cast<double>(n - ball(g, rep.v0, r1).size()), 0.0));

    VertexSet removed = rep.v0;
    removed.insert(removed.end(), rep.u.begin(), rep.u.end());
    const Subgraph h = delete_vertices(g, removed);
    rep.h = h.graph;
    rep.h_origin = h.origin;
    const std::size_t hn = rep.h.order();

    const double lam_pow = std::pow(lambda, 2 * r1);
    std::vector<double> small_radii = hn ? detail::ball_radii(rep.h, r2, jobs) : std::vector<double>{};
    double worst_reduction = -INFINITY;
    double worst_small = 0.0;
    double walk_sum = 0.0;
    for (std::size_t i = 0; i < hn; ++i) {
        const double small_pow = std::pow(small_radii[i], 2 * r1);
        worst_reduction = std::max(worst_reduction, small_pow + 1.0 - std::pow(big_radii[h.origin[i]], 2 * r1));
        worst_small = std::max(worst_small, small_pow);
        walk_sum += std::pow(small_radii[i], 2 * r2);
    }
    double h_walks = 0.0;
    std::vector<double> h_values = hn ? graph_eigenvalues(rep.h) : std::vector<double>{};
    for (double x : h_values) h_walks += std::pow(x, 2 * r2);
    rep.multiplicity_in_h = static_cast<std::size_t>(
        std::count_if(h_values.begin(), h_values.end(), [&](double x) { return std::abs(x - lambda) <= rep.tolerance; }));
    rep.multiplicity_in_g = multiplicity(values, lambda, rep.tolerance);

    const double nn = static_cast<double>(n);
    const double ratio = static_cast<double>(r2) / r1;
    if (hn) {
        rep.ledger.push_back(ledger_entry("per_vertex_net_deletion", worst_reduction, 0.0));
        rep.ledger.push_back(ledger_entry("per_vertex_bound", worst_small, lam_pow - 1.0));
    }
    rep.ledger.push_back(ledger_entry("walk_count_H", h_walks, walk_sum));
    rep.ledger.push_back(ledger_entry("walk_sum_bound", walk_sum, hn ? std::pow(std::max(0.0, lam_pow - 1.0), ratio) * nn : 0.0));
    rep.ledger.push_back(ledger_entry("multiplicity_in_H", static_cast<double>(rep.multiplicity_in_h),
                                      std::pow(std::max(0.0, 1.0 - 1.0 / lam_pow), ratio) * nn));
    rep.ledger.push_back(ledger_entry("final_interlacing", static_cast<double>(rep.multiplicity_in_g),
                                      static_cast<double>(rep.multiplicity_in_h + rep.v0.size() + rep.u.size())));
    rep.ledger.push_back(ledger_entry("asymptotic_exponential_step", std::exp(-ratio / lam_pow) * nn,
                                      std::exp(-std::sqrt(std::log(nn))) * nn, true));
    return rep;
}

}  // namespace eqkit
