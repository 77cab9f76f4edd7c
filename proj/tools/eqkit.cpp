// eqkit command-line front end.
//
// Exit codes: 0 success, 1 validation or assertion failure, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eqkit/acceptance.hpp"
#include "eqkit/eqkit.hpp"
#include "eqkit/report.hpp"

namespace {

using namespace eqkit;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    unsigned jobs = default_jobs();
    std::uint64_t seed = 0;
    std::string report;
    bool no_timing = false;
};

std::uint64_t env_seed() {
    const char* s = std::getenv("EQKIT_SEED");
    if (!s || !*s) return 0;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw UsageError(std::string("EQKIT_SEED is not an unsigned integer: ") + s);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text << '\n';
}

Angle angle_arg(const std::string& text) {
    try {
        return parse_angle(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--alpha: ") + e.what());
    }
}

Graph graph_arg(const std::string& path) {
    try {
        if (!std::ifstream(path)) throw UsageError("cannot open " + path);
        return read_graph_file(path);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

LineConfig config_arg(const std::string& path) {
    try {
        return config_from_json(Json::parse(read_file(path)));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(path + ": malformed vectors file: " + e.what());
    }
}

Json histogram(const Graph& g) {
    std::map<std::size_t, std::size_t> h;
    for (Vertex v = 0; v < g.order(); ++v) ++h[g.degree(v)];
    Json j = Json::object();
    for (auto [deg, count] : h) j[std::to_string(deg)] = count;
    return j;
}

class Runner {
public:
    explicit Runner(const Globals& g) : globals_(g), start_(std::chrono::steady_clock::now()) {}

    /// Writes the report when --report was given.
    void finish(const std::string& command, Json parameters, Json tolerances, Json results, Json ledger = Json::array()) const {
        if (globals_.report.empty()) return;
        RunManifest m{command, std::move(parameters), globals_.seed, std::move(tolerances), std::nullopt};
        if (!globals_.no_timing) m.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_file(globals_.report, dump_json(make_report(m, std::move(results), std::move(ledger))));
    }

private:
    const Globals& globals_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eqkit: equiangular lines, spectral radius order, switching and eigenvalue multiplicity"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals globals;
    std::string seed_text;
    app.add_option("--jobs", globals.jobs, "Worker threads (default: available parallelism)")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed_text, "RNG seed (default: $EQKIT_SEED or 0)");
    app.add_option("--report", globals.report, "Write a JSON report to this path");
    app.add_flag("--no-timing", globals.no_timing, "Omit wall time so reruns are byte-identical");

    std::string alpha_text, lambda_text, in_path, out_path, graph_path, cert_path;
    std::size_t d = 0, nmax = 0, kmax = kDefaultKmax, m1 = 0, m2 = 0, j = 2;
    double c = 1.5;
    bool exact = false, quick = false, full = false;

    auto* construct = app.add_subcommand("construct", "Build the largest known family of equiangular lines");
    construct->add_option("--alpha", alpha_text, "Angle parameter, e.g. 1/3")->required();
    construct->add_option("--d", d, "Dimension")->required()->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    construct->add_option("--kmax", kmax, "Search bound for k(lambda)");
    construct->add_option("--out", out_path, "Write vectors.json");

    auto* verify = app.add_subcommand("verify", "Validate a vectors.json file");
    verify->add_option("--in", in_path, "vectors.json")->required();
    verify->add_option("--alpha", alpha_text, "Angle parameter")->required();

    auto* oracle = app.add_subcommand("oracle", "Exhaustive maximum over graphs on at most nmax vertices");
    oracle->add_option("--alpha", alpha_text, "Angle parameter")->required();
    oracle->add_option("--d", d, "Dimension")->required();
    oracle->add_option("--nmax", nmax, "Largest order searched (<= 8)")->required();

    auto* korder = app.add_subcommand("korder", "Spectral radius order k(lambda)");
    korder->add_option("--lambda", lambda_text, "e.g. 2, sqrt(2), (1+sqrt(5))/2")->required();
    korder->add_option("--kmax", kmax, "Search bound");
    korder->add_option("--emit-certificate", cert_path, "Write the certificate JSON here");

    auto* sw = app.add_subcommand("switch", "Degree-bounding switch of a vectors.json configuration");
    sw->add_option("--in", in_path, "vectors.json")->required();
    sw->add_option("--alpha", alpha_text, "Angle parameter")->required();
    sw->add_option("--m1", m1, "Half-size of the independent set V_1");
    sw->add_option("--m2", m2, "Cap on profile classes");
    sw->add_option("--out", out_path, "Write the switched vectors.json");

    auto* mult = app.add_subcommand("mult", "Eigenvalue multiplicity of a graph");
    mult->add_option("--graph", graph_path, "graph6 or JSON edge-list file")->required();
    mult->add_option("--j", j, "Eigenvalue index (1 = largest)");
    mult->add_flag("--exact", exact, "Exact multiplicity of --lambda via the characteristic polynomial");
    mult->add_option("--lambda", lambda_text, "Algebraic target for --exact");

    auto* trace = app.add_subcommand("trace", "Trace the multiplicity argument on a graph");
    trace->add_option("--graph", graph_path, "graph6 or JSON edge-list file")->required();
    trace->add_option("--j", j, "Eigenvalue index");
    trace->add_option("--c", c, "Radius scale constant");

    auto* suite = app.add_subcommand("suite", "Run the acceptance suite");
    suite->add_flag("--quick", quick, "Quick level (default)");
    suite->add_flag("--full", full, "Full level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        globals.seed = seed_text.empty() ? env_seed() : std::stoull(seed_text);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception&) {
        std::cerr << "error: --seed must be an unsigned integer\n";
        return kExitUsage;
    }

    Runner runner(globals);
    const Json rank_tol{{"rank_relative", kDefaultRankTol}, {"unit_norm", kUnitNormTol}, {"inner_product", kInnerProductTol}};

    try {
        if (*construct) {
            const Angle angle = angle_arg(alpha_text);
            const KOrderResult ko = k_order(lambda_from_alpha(angle), kmax, globals.jobs);
            const NAlphaResult formula = n_alpha_formula(angle, d, ko);
            const LineConfig config = construct_best(angle, d, kmax, globals.jobs);
            const ValidationReport v = validate(config, angle);
            std::cout << "alpha = " << angle.exact().to_string() << ", lambda = " << lambda_from_alpha(angle).to_string() << '\n';
            if (ko.found())
                std::cout << "k(lambda) = " << *ko.k << ", witness " << to_graph6(*ko.witness) << '\n';
            else
                std::cout << "k(lambda) > " << kmax << " (no witness found)\n";
            std::cout << config.size() << " lines in R^" << config.d << " (rank " << v.effective_dim << "), " << (v.valid ? "valid" : "INVALID") << '\n';
            std::cout << "formula: " << formula.value << " [regime " << formula.regime << "; " << formula.caveat << "]\n";
            if (!out_path.empty()) write_file(out_path, dump_json(config_to_json(config)));
            runner.finish("construct", {{"alpha", alpha_text}, {"d", d}, {"kmax", kmax}}, rank_tol,
                          {{"lines", config.size()},
                           {"d", config.d},
                           {"effective_dim", v.effective_dim},
                           {"valid", v.valid},
                           {"k", ko.found() ? Json(*ko.k) : Json(nullptr)},
                           {"formula", {{"value", formula.value}, {"regime", std::string(1, formula.regime)}, {"caveat", formula.caveat}}}});
            return v.valid ? kExitOk : kExitFailed;
        }

        if (*verify) {
            const Angle angle = angle_arg(alpha_text);
            const LineConfig config = config_arg(in_path);
            const ValidationReport v = validate(config, angle);
            std::cout << v.count << " vectors in R^" << config.d << ", effective dimension " << v.effective_dim << ": " << (v.valid ? "valid" : "INVALID")
                      << '\n';
            for (const auto& msg : v.violations) std::cout << "  violation: " << msg << '\n';
            runner.finish("verify", {{"in", in_path}, {"alpha", alpha_text}}, rank_tol,
                          {{"valid", v.valid},
                           {"count", v.count},
                           {"effective_dim", v.effective_dim},
                           {"max_norm_deviation", v.max_norm_deviation},
                           {"max_inner_product_deviation", v.max_inner_product_deviation},
                           {"violations", v.violations},
                           {"associated_graph6", to_graph6(v.associated)}});
            return v.valid ? kExitOk : kExitFailed;
        }

        if (*oracle) {
            const Angle angle = angle_arg(alpha_text);
            if (nmax > kOracleCap) throw UsageError("--nmax above " + std::to_string(kOracleCap));
            const OracleResult o = brute_oracle(angle, d, nmax, globals.jobs);
            std::cout << "max N <= " << nmax << " in R^" << d << ": " << o.best;
            if (o.witness) std::cout << " (witness " << to_graph6(*o.witness) << ')';
            std::cout << "; " << o.graphs_tested << " graphs tested\n";
            runner.finish("oracle", {{"alpha", alpha_text}, {"d", d}, {"nmax", nmax}}, rank_tol,
                          {{"best", o.best}, {"graphs_tested", o.graphs_tested}, {"witness_graph6", o.witness ? to_graph6(*o.witness) : ""}});
            return kExitOk;
        }

        if (*korder) {
            AlgebraicNumber lambda = AlgebraicNumber::integer(0);
            try {
                lambda = parse_algebraic(lambda_text);
            } catch (const std::exception& e) {
                throw UsageError(std::string("--lambda: ") + e.what());
            }
            if (sign(lambda) <= 0) throw UsageError("--lambda must be positive");
            if (kmax < 1 || kmax > kEnumerationCap) throw UsageError("--kmax must lie in 1.." + std::to_string(kEnumerationCap));
            const KOrderResult ko = k_order(lambda, kmax, globals.jobs);
            const Json cert = certificate_json(ko);
            if (ko.found())
                std::cout << "k=" << *ko.k << " witness " << to_graph6(*ko.witness) << '\n';
            else
                std::cout << "not found with <= " << kmax << " vertices (k(lambda) > " << kmax << ")\n";
            if (!cert_path.empty()) write_file(cert_path, dump_json(cert));
            runner.finish("korder", {{"lambda", lambda_text}, {"kmax", kmax}}, {{"prefilter_abs", kRadiusPrefilterTol}, {"certificate", "exact"}}, cert);
            return kExitOk;
        }

        if (*sw) {
            const Angle angle = angle_arg(alpha_text);
            const LineConfig config = config_arg(in_path);
            const ValidationReport v = validate(config, angle);
            if (!v.valid) {
                std::cout << "input configuration is invalid: " << v.violations.front() << '\n';
                return kExitFailed;
            }
            const SwitchParams params = SwitchParams::defaults(angle, m1, m2);
            const SwitchResult sr = bounded_degree_switch(config, angle, params, globals.seed, globals.jobs);
            const CliqueReport clique = clique_bound_check(sr.switched_config, angle);
            for (const auto& line : sr.log) std::cout << line << '\n';
            std::cout << "clique number " << clique.clique_number << " (bound " << clique.bound << ")\n";
            Json lemma = nullptr;
            bool ok = clique.holds;
            if (!sr.v1.empty()) {
                const IndependentLemmaReport il = independent_lemma_check(v.associated, sr.v1, angle.lambda(), params.m2);
                lemma = {{"a_holds", il.a_holds},
                         {"a_guaranteed_by_size", il.a_guaranteed},
                         {"a_threshold", il.a_threshold},
                         {"c_empty_max_degree", il.c_empty_max_degree},
                         {"degree_bound", il.degree_bound},
                         {"b_holds", il.b_holds},
                         {"max_class", il.max_class},
                         {"m2", il.m2}};
                std::cout << "independent-set lemma on V_1: (a) " << (il.a_holds ? "holds" : "fails") << ", (b) " << (il.b_holds ? "holds" : "fails")
                          << '\n';
            }
            if (!out_path.empty()) write_file(out_path, dump_json(config_to_json(sr.switched_config)));
            runner.finish("switch", {{"in", in_path}, {"alpha", alpha_text}, {"m1", params.m1}, {"m2", params.m2}}, rank_tol,
                          {{"signs", sr.signs},
                           {"v1", to_json(sr.v1)},
                           {"max_degree_before", sr.initial_max_degree},
                           {"max_degree_after", sr.max_degree},
                           {"degree_histogram_before", histogram(v.associated)},
                           {"degree_histogram_after", histogram(sr.associated_graph)},
                           {"degree_bound_D", params.delta_target},
                           {"params", {{"m0", params.m0}, {"m1", params.m1}, {"m2", params.m2}}},
                           {"clique", {{"clique_number", clique.clique_number}, {"bound", clique.bound}, {"holds", clique.holds}}},
                           {"independent_lemma", lemma},
                           {"log", sr.log}});
            return ok ? kExitOk : kExitFailed;
        }

        if (*mult) {
            const Graph g = graph_arg(graph_path);
            if (exact) {
                if (lambda_text.empty()) throw UsageError("--exact needs --lambda");
                AlgebraicNumber lambda = AlgebraicNumber::integer(0);
                try {
                    lambda = parse_algebraic(lambda_text);
                } catch (const std::exception& e) {
                    throw UsageError(std::string("--lambda: ") + e.what());
                }
                if (g.order() > kExactCap) throw UsageError("--exact supports at most " + std::to_string(kExactCap) + " vertices");
                const std::size_t m = multiplicity_exact(g, lambda);
                std::cout << "multiplicity of " << lambda.to_string() << ": " << m << " (exact)\n";
                runner.finish("mult", {{"graph", graph_path}, {"lambda", lambda_text}, {"exact", true}}, {{"method", "exact"}}, {{"multiplicity", m}});
                return kExitOk;
            }
            if (j < 1 || j > g.order()) throw UsageError("--j must lie in 1..n");
            const auto values = graph_eigenvalues(g);
            const double tol = kSecondMultiplicityTol * std::max(1.0, values.front());
            const std::size_t m = multiplicity(values, values[j - 1], tol);
            std::cout << "lambda_" << j << " = " << values[j - 1] << ", multiplicity " << m << " (tol " << tol << ")\n";
            runner.finish("mult", {{"graph", graph_path}, {"j", j}}, {{"cluster", tol}, {"gap_factor", kClusterGapFactor}},
                          {{"lambda", values[j - 1]}, {"multiplicity", m}, {"spectrum", values}});
            return kExitOk;
        }

        if (*trace) {
            const Graph g = graph_arg(graph_path);
            if (!is_connected(g)) throw UsageError("trace needs a connected graph");
            const TraceReport tr = proof_trace(g, j, c, globals.jobs);
            Json ledger = Json::array();
            for (const auto& e : tr.ledger) {
                ledger.push_back(to_json(e));
                std::cout << (e.holds ? "  ok   " : (e.asymptotic ? "  flag " : "  FAIL ")) << e.name << ": " << e.lhs << " <= " << e.rhs << '\n';
            }
            std::cout << "lambda_" << j << " = " << tr.lambda << ", multiplicity in G " << tr.multiplicity_in_g << ", in H " << tr.multiplicity_in_h
                      << "; |U| = " << tr.u.size() << ", |U0| = " << tr.u0.size() << ", |V0| = " << tr.v0.size() << '\n';
            runner.finish("trace", {{"graph", graph_path}, {"j", j}, {"c", c}},
                          {{"ledger_relative", kLedgerRelTol}, {"multiplicity", tr.tolerance}},
                          {{"lambda", tr.lambda},
                           {"bounded_branch", tr.bounded_branch},
                           {"r1", tr.params.r1},
                           {"r2", tr.params.r2},
                           {"r", tr.params.r},
                           {"U", to_json(tr.u)},
                           {"U0", to_json(tr.u0)},
                           {"V0", to_json(tr.v0)},
                           {"H_graph6", to_graph6(tr.h)},
                           {"multiplicity_in_G", tr.multiplicity_in_g},
                           {"multiplicity_in_H", tr.multiplicity_in_h},
                           {"holds", tr.holds()}},
                          ledger);
            return tr.holds() ? kExitOk : kExitFailed;
        }

        if (*suite) {
            if (quick && full) throw UsageError("choose one of --quick and --full");
            const auto level = full ? acceptance::Level::full : acceptance::Level::quick;
            const auto results = acceptance::run_suite(level, globals.jobs, globals.seed,
                                                       [](const acceptance::CriterionResult& r) { std::cout << acceptance::summary_line(r) << std::endl; });
            bool all = true;
            Json out = Json::array();
            for (const auto& r : results) {
                all = all && r.passed;
                out.push_back(r.to_json(!globals.no_timing));
            }
            std::cout << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
            runner.finish("suite", {{"level", acceptance::level_name(level)}}, rank_tol, {{"passed", all}, {"criteria", out}});
            return all ? kExitOk : kExitFailed;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}
