#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "eqkit/eqkit.hpp"
#include "eqkit/report.hpp"

namespace eqkit::acceptance {

enum class Level { quick, full };

inline const char* level_name(Level l) { return l == Level::quick ? "quick" : "full"; }

struct Caps {
    std::size_t d_max;
    std::uint64_t p_max;
    std::size_t kmax;
};

/// Quick runs cap d at 40, p at 13 and kmax at 6.
inline Caps caps(Level l) { return l == Level::quick ? Caps{40, 13, 6} : Caps{1000, 1000, kDefaultKmax}; }

struct CriterionResult {
    CriterionResult() = default;
    CriterionResult(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

    int id = 0;
    std::string name;
    bool passed = true;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    Json ledger = Json::array();

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            passed = false;
            if (failures.size() < 20) failures.push_back(what);
        }
    }

    Json to_json(bool timing) const {
        Json j{{"id", id}, {"name", name}, {"passed", passed}, {"checks", checks}, {"failures", failures}, {"ledger", ledger},
               {"budget_seconds", budget_seconds}};
        if (timing) j["seconds"] = seconds;
        return j;
    }
};

namespace detail {

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline void construction_sweep(CriterionResult& res, const Angle& angle, const std::string& label, std::size_t d_lo, std::size_t d_hi,
                               std::size_t expected_k, unsigned jobs) {
    const KOrderResult ko = k_order(lambda_from_alpha(angle), expected_k, jobs);
    res.check(ko.found() && *ko.k == expected_k, label + ": k(lambda) = " + std::to_string(expected_k));
    if (!ko.found()) return;
    std::size_t ok = 0;
    double worst_ip = 0.0;
    for (std::size_t d = d_lo; d <= d_hi; ++d) {
        const LineConfig c = construct_lower_bound(*ko.witness, *ko.k, d, angle);
        const ValidationReport v = validate(c, angle);
        const std::size_t expected = expected_k * (d - 1) / (expected_k - 1);
        const bool good = v.valid && c.size() == expected && c.d <= d && v.effective_dim <= d;
        worst_ip = std::max(worst_ip, v.max_inner_product_deviation);
        res.check(good, label + " d=" + std::to_string(d) + ": N=" + std::to_string(c.size()) + " expected " + std::to_string(expected) +
                            ", valid=" + std::to_string(v.valid) + ", dim=" + std::to_string(v.effective_dim));
        ok += good ? 1 : 0;
    }
    res.ledger.push_back({{"alpha", label}, {"d_range", {d_lo, d_hi}}, {"k", expected_k}, {"witness_graph6", to_graph6(*ko.witness)},
                          {"dimensions_ok", ok}, {"max_inner_product_deviation", worst_ip}, {"tolerance", kInnerProductTol}});
}

/// Vertices grouped into clusters of eigenvalues closer than tol.
inline std::vector<std::size_t> cluster_sizes(const std::vector<double>& sorted_desc, double tol) {
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < sorted_desc.size(); ++i) {
        if (i == 0 || sorted_desc[i - 1] - sorted_desc[i] > tol) sizes.push_back(0);
        ++sizes.back();
    }
    return sizes;
}

struct NamedGraph {
    std::string name;
    Graph graph;
};

inline std::vector<NamedGraph> lemma_family(Level level, std::uint64_t seed) {
    std::vector<NamedGraph> out;
    Rng rng(seed);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 20 + uniform_index(rng, 41);
        const std::size_t extra = uniform_index(rng, n / 2 + 1);
        out.push_back({"random#" + std::to_string(i) + "(n=" + std::to_string(n) + ")", random_connected_bounded(n, 4, extra, rng)});
    }
    for (std::size_t n : {20, 31, 40}) out.push_back({"C" + std::to_string(n), cycle_graph(n)});
    for (std::uint64_t p : {13, 17})
        if (p <= caps(level).p_max) out.push_back({"Paley(" + std::to_string(p) + ")", paley(p)});
    for (std::uint64_t p : {5, 7})
        if (level == Level::full || p == 5) out.push_back({"PSL(2," + std::to_string(p) + ")", psl2_cayley(p)});
    return out;
}

/// Random line configuration: lines of a graph with maximum degree <= lambda
/// (so lambda_1 <= lambda), then a random switch.
inline std::pair<LineConfig, Angle> random_config(Rng& rng) {
    static const long denominators[] = {3, 5, 7};
    const long q = denominators[uniform_index(rng, 3)];
    const Angle angle = Angle::rational(1, q);
    const std::size_t cap = static_cast<std::size_t>((q - 1) / 2);
    const std::size_t n = 6 + uniform_index(rng, 19);
    Graph g(n);
    for (std::size_t t = 0; t < 3 * n; ++t) {
        const Vertex u = uniform_index(rng, n);
        const Vertex v = uniform_index(rng, n);
        if (u != v && !g.adjacent(u, v) && g.degree(u) < cap && g.degree(v) < cap) g.add_edge(u, v);
    }
    LineConfig c = lines_from_graph(g, angle);
    VertexSet s;
    for (Vertex v = 0; v < n; ++v)
        if (uniform_index(rng, 2)) s.push_back(v);
    return {switch_config(std::move(c), s), angle};
}

inline VertexSet random_subset(Rng& rng, std::size_t n) {
    VertexSet s;
    for (Vertex v = 0; v < n; ++v)
        if (uniform_index(rng, 2)) s.push_back(v);
    return s;
}

inline VertexSet symmetric_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace detail

inline CriterionResult criterion_1(Level level, unsigned jobs) {
    CriterionResult r{1, "construction alpha=1/3, N = 2(d-1) for d in 15..40"};
    r.budget_seconds = 5;
    detail::construction_sweep(r, Angle::rational(1, 3), "1/3", 15, std::min<std::size_t>(40, caps(level).d_max), 2, jobs);
    return r;
}

inline CriterionResult criterion_2(Level level, unsigned jobs) {
    CriterionResult r{2, "construction alpha=1/5 (d 11..41) and alpha=1/7 (d 10..40)"};
    r.budget_seconds = 10;
    detail::construction_sweep(r, Angle::rational(1, 5), "1/5", 11, std::min<std::size_t>(41, caps(level).d_max), 3, jobs);
    detail::construction_sweep(r, Angle::rational(1, 7), "1/7", 10, std::min<std::size_t>(40, caps(level).d_max), 4, jobs);
    return r;
}

inline CriterionResult criterion_3(Level level, unsigned jobs) {
    CriterionResult r{3, "spectral radius order with exact certificates"};
    r.budget_seconds = 60;
    const std::size_t kmax = caps(level).kmax;
    struct Case {
        const char* lambda;
        std::size_t k;  // 0: not found
        const char* witness;
    };
    const Case cases[] = {{"1", 2, "K2"}, {"2", 3, "K3"}, {"3", 4, "K4"}, {"sqrt(2)", 3, "P3"}, {"(1+sqrt(5))/2", 4, "P4"}, {"3/2", 0, ""}};
    for (const Case& cs : cases) {
        const AlgebraicNumber lambda = parse_algebraic(cs.lambda);
        const KOrderResult ko = k_order(lambda, kmax, jobs);
        Json entry{{"lambda", cs.lambda}, {"kmax", kmax}, {"graphs_examined", ko.graphs_examined}, {"exact_checks", ko.exact_checks}};
        if (cs.k == 0) {
            r.check(!ko.found(), std::string("k(") + cs.lambda + ") should not be found up to kmax");
            entry["found"] = ko.found();
            r.ledger.push_back(entry);
            continue;
        }
        r.check(ko.found() && *ko.k == cs.k, std::string("k(") + cs.lambda + ") = " + std::to_string(cs.k));
        if (!ko.found()) continue;
        entry["k"] = *ko.k;
        entry["witness_graph6"] = to_graph6(*ko.witness);
        Graph expected = std::string(cs.witness)[0] == 'K' ? complete_graph(cs.k) : path_graph(cs.k);
        r.check(isomorphic(*ko.witness, expected), std::string("witness for ") + cs.lambda + " is " + cs.witness);
        r.check(ko.certificate && ko.certificate->holds && ko.certificate->minpoly_divides, std::string("certificate for ") + cs.lambda);
        // Oracle: no connected graph with fewer vertices comes within 1e-6 of lambda.
        const double target = lambda.approx();
        bool smaller = false;
        for (std::size_t n = 1; n < cs.k; ++n)
            for (const Graph& g : enumerate_connected(n))
                if (std::abs(spectral_radius(g) - target) < kRadiusPrefilterTol) smaller = true;
        r.check(!smaller, std::string("no smaller witness for ") + cs.lambda);
        entry["oracle_smaller_witness"] = smaller;
        r.ledger.push_back(entry);
    }
    return r;
}

inline CriterionResult criterion_4(Level, unsigned) {
    CriterionResult r{4, "multiplicity extremes: Paley and PSL(2,5)"};
    r.budget_seconds = 30;
    for (std::uint64_t p : {13, 17}) {
        const SecondEigenvalue s = second_multiplicity(paley(p));
        const double expected = (std::sqrt(static_cast<double>(p)) - 1.0) / 2.0;
        r.check(std::abs(s.lambda2 - expected) <= 1e-8, "Paley(" + std::to_string(p) + ") lambda2 = " + detail::fmt(s.lambda2));
        r.check(s.multiplicity == (p - 1) / 2, "Paley(" + std::to_string(p) + ") multiplicity = " + std::to_string(s.multiplicity));
        r.ledger.push_back({{"graph", "Paley(" + std::to_string(p) + ")"}, {"lambda2", s.lambda2}, {"expected", expected},
                            {"multiplicity", s.multiplicity}, {"tolerance", s.tolerance}});
    }
    const Graph g = psl2_cayley(5);
    r.check(g.order() == 60, "PSL(2,5) has 60 vertices");
    bool regular = true;
    for (Vertex v = 0; v < g.order(); ++v) regular = regular && g.degree(v) == 4;
    r.check(regular, "PSL(2,5) is 4-regular");
    r.check(is_connected(g), "PSL(2,5) is connected");
    const auto values = graph_eigenvalues(g);
    const auto sizes = detail::cluster_sizes(values, 1e-7);
    r.check(std::abs(values.front() - 4.0) < 1e-9 && sizes.front() == 1, "PSL(2,5) lambda_1 = 4 is simple");
    const std::size_t smallest = *std::min_element(sizes.begin() + 1, sizes.end());
    r.check(smallest >= 2, "PSL(2,5) non-top multiplicities >= 2, smallest " + std::to_string(smallest));
    r.ledger.push_back({{"graph", "PSL(2,5)"}, {"order", g.order()}, {"cluster_sizes", sizes}, {"cluster_tolerance", 1e-7}});
    return r;
}

inline CriterionResult criterion_5(Level level, unsigned jobs, std::uint64_t seed) {
    CriterionResult r{5, "lemma property suites on bounded-degree families"};
    r.budget_seconds = 180;
    const auto family = detail::lemma_family(level, seed);
    std::size_t nets = 0, deletions = 0, walks = 0, traces = 0, interlacings = 0;
    double worst_deletion = INFINITY, worst_walk = INFINITY, worst_final = INFINITY;
    Rng rng(seed ^ 0x5bd1e995ULL);
    for (const auto& [name, g] : family) {
        for (int rad : {1, 2, 3}) {
            const VertexSet net = r_net(g, rad);
            const std::size_t bound = (g.order() + static_cast<std::size_t>(rad)) / static_cast<std::size_t>(rad + 1);
            r.check(net.size() <= bound && is_r_net(g, net, rad), name + ": r-net r=" + std::to_string(rad));
            ++nets;
            const NetDeletionReport nd = net_deletion_check(g, rad);
            r.check(nd.entry.holds, name + ": net deletion r=" + std::to_string(rad) + " slack " + detail::fmt(nd.entry.slack));
            if (!nd.skipped) worst_deletion = std::min(worst_deletion, nd.entry.slack);
            ++deletions;
        }
        if (g.order() <= kExactWalkCap) {
            for (int rad : {1, 2}) {
                const WalkBoundReport wb = walk_bound_check(g, rad, jobs);
                r.check(wb.entry.holds && wb.walk_count_matches && wb.spectral_rel_error <= 1e-6, name + ": walk bound r=" + std::to_string(rad));
                worst_walk = std::min(worst_walk, wb.entry.slack);
                ++walks;
            }
        }
        const TraceReport tr = proof_trace(g, 2, 1.5, jobs);
        bool final_ok = tr.holds();
        for (const auto& e : tr.ledger)
            if (e.name == "final_interlacing") {
                final_ok = final_ok && e.holds;
                worst_final = std::min(worst_final, e.slack);
            }
        r.check(final_ok, name + ": proof trace ledger");
        ++traces;
    }
    for (int t = 0; t < 200; ++t) {
        const auto& g = family[uniform_index(rng, family.size())].graph;
        const InterlacingReport ir = interlacing_check(g, uniform_index(rng, g.order()));
        r.check(ir.holds, "interlacing violation " + detail::fmt(ir.max_violation));
        ++interlacings;
    }
    r.ledger.push_back({{"graphs", family.size()}, {"r_nets", nets}, {"net_deletions", deletions}, {"walk_checks", walks}, {"traces", traces},
                        {"interlacing_pairs", interlacings}, {"min_net_deletion_slack", worst_deletion}, {"min_walk_slack", worst_walk},
                        {"min_final_interlacing_slack", worst_final}, {"trace_c", 1.5}, {"ledger_relative_tolerance", kLedgerRelTol}});
    return r;
}

inline CriterionResult criterion_6(unsigned jobs, std::uint64_t seed) {
    CriterionResult r{6, "switching laws, profile partition, clique bound, degree-bounding switch"};
    r.budget_seconds = 120;
    Rng rng(seed ^ 0x27d4eb2fULL);
    double worst_spectrum = 0.0;
    for (int t = 0; t < 50; ++t) {
        auto [c, angle] = detail::random_config(rng);
        const std::string tag = "config#" + std::to_string(t);
        const Graph g = associated_graph(c, angle);
        const VertexSet s = detail::random_subset(rng, c.size());
        const VertexSet u = detail::random_subset(rng, c.size());

        // (a) involution and composition.
        const LineConfig once = switch_config(c, s);
        r.check(switch_config(once, s).vectors == c.vectors, tag + ": switch is an involution");
        const Graph twice = associated_graph(switch_config(once, u), angle);
        r.check(twice == associated_graph(switch_config(c, detail::symmetric_difference(s, u)), angle), tag + ": switch composes as S xor T");
        r.check(associated_graph(once, angle) == switch_graph(g, s), tag + ": switch complements the cut");

        // (b) D Gram D has the spectrum of Gram.
        const auto before = eigenvalues(gram_matrix(c.vectors));
        const auto after = eigenvalues(gram_matrix(once.vectors));
        double dev = 0.0;
        for (std::size_t i = 0; i < before.size(); ++i) dev = std::max(dev, std::abs(before[i] - after[i]));
        worst_spectrum = std::max(worst_spectrum, dev);
        r.check(dev <= 1e-9, tag + ": Gram spectra differ by " + detail::fmt(dev));

        // (c) C_X(A) over all A partition V \ X.
        VertexSet x;
        for (Vertex v = 0; v < g.order() && x.size() < 6; ++v)
            if (uniform_index(rng, 2)) x.push_back(v);
        std::vector<int> hits(g.order(), 0);
        for (std::uint32_t mask = 0; mask < (1U << x.size()); ++mask) {
            VertexSet a;
            for (std::size_t i = 0; i < x.size(); ++i)
                if ((mask >> i) & 1U) a.push_back(x[i]);
            for (Vertex v : c_profile(g, x, a)) ++hits[v];
        }
        bool partition = true;
        for (Vertex v = 0; v < g.order(); ++v) {
            const bool in_x = std::find(x.begin(), x.end(), v) != x.end();
            partition = partition && hits[v] == (in_x ? 0 : 1);
        }
        r.check(partition, tag + ": profile classes partition V \\ X");

        // (d) clique bound.
        const CliqueReport cr = clique_bound_check(c, angle);
        r.check(cr.holds, tag + ": clique " + std::to_string(cr.clique_number) + " exceeds 1/alpha + 1");
    }
    r.ledger.push_back({{"random_configs", 50}, {"max_gram_spectrum_deviation", worst_spectrum}, {"tolerance", 1e-9}});

    // (e) adversarially negated lower-bound configurations.
    struct Adversary {
        long q;
        std::size_t k;
        std::size_t d_full;
    };
    for (const Adversary& adv : {Adversary{3, 2, 101}, Adversary{5, 3, 133}, Adversary{7, 4, 150}}) {
        const Angle angle = Angle::rational(1, adv.q);
        const SwitchParams params = SwitchParams::defaults(angle);
        // Full size at both levels: below about 4 m1 lines no independent V_1 of size 2 m1 survives the negation.
        const std::size_t d = adv.d_full;
        const KOrderResult ko = k_order(lambda_from_alpha(angle), adv.k, jobs);
        r.check(ko.found(), "k(lambda) for alpha = 1/" + std::to_string(adv.q));
        if (!ko.found()) continue;
        const LineConfig base = construct_lower_bound(*ko.witness, adv.k, d, angle);
        for (int t = 0; t < 3; ++t) {
            const LineConfig attacked = switch_config(base, detail::random_subset(rng, base.size()));
            const SwitchResult sr = bounded_degree_switch(attacked, angle, params, seed + static_cast<std::uint64_t>(t), jobs);
            const std::string tag = "alpha=1/" + std::to_string(adv.q) + " N=" + std::to_string(base.size()) + " run " + std::to_string(t);
            r.check(sr.max_degree <= adv.k - 1, tag + ": max degree " + std::to_string(sr.max_degree) + " > k-1");
            r.check(clique_bound_check(sr.switched_config, angle).holds, tag + ": clique bound after switching");
            r.ledger.push_back({{"alpha", "1/" + std::to_string(adv.q)}, {"N", base.size()}, {"m1", params.m1}, {"v1_size", sr.v1.size()},
                                {"degree_before", sr.initial_max_degree}, {"degree_after", sr.max_degree}, {"k_minus_1", adv.k - 1}});
        }
    }
    return r;
}

inline CriterionResult criterion_7(Level level, unsigned jobs) {
    CriterionResult r{7, "brute-force oracle versus library constructions"};
    r.budget_seconds = 120;
    struct Case {
        long q;
        std::size_t d;
    };
    for (const Case& cs : {Case{2, 2}, Case{3, 3}, Case{3, 4}}) {
        const Angle angle = Angle::rational(1, cs.q);
        const OracleResult o = brute_oracle(angle, cs.d, 7, jobs);
        const LineConfig best = construct_best(angle, cs.d, caps(level).kmax, jobs);
        const bool valid = validate(best, angle).valid;
        const std::string tag = "alpha=1/" + std::to_string(cs.q) + " d=" + std::to_string(cs.d);
        r.check(valid, tag + ": library construction valid");
        r.check(o.best >= best.size(), tag + ": oracle " + std::to_string(o.best) + " < construction " + std::to_string(best.size()));
        if (cs.q == 2) r.check(o.best == 3, tag + ": oracle = 3");
        r.ledger.push_back({{"alpha", "1/" + std::to_string(cs.q)}, {"d", cs.d}, {"oracle", o.best}, {"construction", best.size()},
                            {"graphs_tested", o.graphs_tested}, {"oracle_witness_graph6", o.witness ? to_graph6(*o.witness) : ""}});
    }
    return r;
}

/// Every criterion in order; `on_result` sees each result as soon as it finishes.
inline std::vector<CriterionResult> run_suite(Level level, unsigned jobs, std::uint64_t seed,
                                              const std::function<void(const CriterionResult&)>& on_result = {}) {
    std::vector<std::function<CriterionResult()>> runs = {
        [&] { return criterion_1(level, jobs); },       [&] { return criterion_2(level, jobs); },
        [&] { return criterion_3(level, jobs); },       [&] { return criterion_4(level, jobs); },
        [&] { return criterion_5(level, jobs, seed); }, [&] { return criterion_6(jobs, seed); },
        [&] { return criterion_7(level, jobs); },
    };
    std::vector<CriterionResult> out;
    for (auto& run : runs) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = run();
        } catch (const std::exception& e) {
            res.id = static_cast<int>(out.size()) + 1;
            res.name = "criterion " + std::to_string(res.id);
            res.check(false, std::string("exception: ") + e.what());
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // Budgets bind the full suite only; quick runs are smaller by construction.
        if (level == Level::full) res.check(res.seconds <= res.budget_seconds, "runtime " + detail::fmt(res.seconds) + " s over budget");
        if (on_result) on_result(res);
        out.push_back(std::move(res));
    }
    return out;
}

inline std::string summary_line(const CriterionResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%zu checks, %.2f s)", r.checks, r.seconds);
    std::string line = std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + ". " + r.name + buf;
    for (const auto& f : r.failures) line += "\n       - " + f;
    return line;
}

}  // namespace eqkit::acceptance
