#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "eqkit/canonical.hpp"
#include "eqkit/generators.hpp"
#include "eqkit/graph.hpp"
#include "eqkit/graph_io.hpp"
#include "oracles.hpp"

using namespace eqkit;

TEST(Graph, BasicInvariants) {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 1);
    EXPECT_TRUE(g.adjacent(1, 2));
    EXPECT_TRUE(g.adjacent(2, 1));
    EXPECT_FALSE(g.adjacent(0, 2));
    EXPECT_EQ(g.size(), 2u);
    EXPECT_EQ(g.degree(1), 2u);
    EXPECT_THROW(g.add_edge(3, 3), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 4), std::out_of_range);
    g.toggle_edge(0, 1);
    EXPECT_FALSE(g.adjacent(0, 1));
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{1, 2}}));
}

TEST(Graph, WideRows) {
    Graph g(150);
    for (Vertex v = 1; v < 150; ++v) g.add_edge(0, v);
    EXPECT_EQ(g.degree(0), 149u);
    EXPECT_EQ(g.neighbors(0).back(), 149u);
    EXPECT_EQ(g.common_neighbors(1, 149), 1u);
}

TEST(Neighborhood, PathBall) {
    const Subgraph s = neighborhood(path_graph(5), 2, 1);
    EXPECT_EQ(s.origin, (VertexSet{1, 2, 3}));
    EXPECT_TRUE(s.graph == path_graph(3));
}

TEST(Neighborhood, RadiusZeroIsSingleVertex) {
    const Graph g = petersen_graph();
    for (Vertex v = 0; v < g.order(); ++v) {
        const Subgraph s = neighborhood(g, v, 0);
        EXPECT_EQ(s.graph.order(), 1u);
        EXPECT_EQ(s.origin, (VertexSet{v}));
    }
}

TEST(Neighborhood, PetersenBallIsStar) {
    const Graph g = petersen_graph();
    for (Vertex v = 0; v < g.order(); ++v) {
        const Subgraph s = neighborhood(g, v, 1);
        EXPECT_EQ(s.graph.order(), 4u);
        EXPECT_EQ(s.graph.size(), 3u);
        EXPECT_EQ(s.graph.max_degree(), 3u);
    }
}

TEST(Neighborhood, OutOfRange) { EXPECT_THROW(neighborhood(path_graph(3), 3, 1), std::out_of_range); }

TEST(Neighborhood, MonotoneAndEventuallyEverything) {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const Graph g = random_connected_bounded(10 + uniform_index(rng, 30), 4, 10, rng);
        const int diam = diameter(g);
        for (Vertex v = 0; v < g.order(); v += 3) {
            std::size_t last = 0;
            for (int r = 0; r <= diam; ++r) {
                const std::size_t size = neighborhood(g, v, r).graph.order();
                EXPECT_GE(size, last);
                last = size;
            }
            EXPECT_EQ(last, g.order());
        }
    }
}

TEST(DeleteVertices, KnownExamples) {
    EXPECT_TRUE(delete_vertices(complete_graph(3), {0}).graph == complete_graph(2));
    const Subgraph c5 = delete_vertices(cycle_graph(5), {0, 1});
    EXPECT_TRUE(c5.graph == path_graph(3));
    EXPECT_EQ(c5.origin, (VertexSet{2, 3, 4}));
    const Graph p = petersen_graph();
    EXPECT_TRUE(delete_vertices(p, {}).graph == p);
}

TEST(RNet, StarCentre) {
    const VertexSet net = r_net(star_graph(5), 1);
    EXPECT_EQ(net, (VertexSet{0}));
}

TEST(RNet, CycleAndPathAgainstBruteForce) {
    // The brute-force minimum confirms the bound is attainable.
    EXPECT_LE(oracle::min_r_net(cycle_graph(6), 1), 2u);
    EXPECT_LE(oracle::min_r_net(path_graph(5), 2), 2u);
    const VertexSet c6 = r_net(cycle_graph(6), 1);
    EXPECT_LE(c6.size(), 2u);
    EXPECT_TRUE(is_r_net(cycle_graph(6), c6, 1));
    const VertexSet p5 = r_net(path_graph(5), 2);
    EXPECT_LE(p5.size(), 2u);
    EXPECT_TRUE(is_r_net(path_graph(5), p5, 2));
}

TEST(RNet, Errors) {
    EXPECT_THROW(r_net(Graph(0), 1), std::invalid_argument);
    EXPECT_THROW(r_net(empty_graph(2), 1), std::invalid_argument);
    EXPECT_THROW(r_net(path_graph(3), 0), std::invalid_argument);
}

TEST(RNet, SizeBoundAndCoverOnRandomGraphs) {
    Rng rng(17);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + uniform_index(rng, 200);
        const Graph g = random_connected_bounded(n, 2 + uniform_index(rng, 4), uniform_index(rng, n), rng);
        for (int r : {1, 2, 3, 5}) {
            const VertexSet net = r_net(g, r);
            EXPECT_LE(net.size(), (n + static_cast<std::size_t>(r)) / static_cast<std::size_t>(r + 1));
            EXPECT_TRUE(is_r_net(g, net, r));
        }
    }
}

TEST(RNet, NeverBelowBruteForceMinimum) {
    Rng rng(23);
    for (int t = 0; t < 25; ++t) {
        const Graph g = random_connected_bounded(4 + uniform_index(rng, 12), 3, 3, rng);
        for (int r : {1, 2}) EXPECT_GE(r_net(g, r).size(), oracle::min_r_net(g, r));
    }
}

TEST(Generators, Basics) {
    EXPECT_EQ(complete_graph(4).size(), 6u);
    const Graph u = disjoint_union(complete_graph(3), complete_graph(3));
    EXPECT_EQ(u.order(), 6u);
    EXPECT_EQ(components(u).size(), 2u);
    const Graph rr = random_regular(20, 3, 1);
    EXPECT_EQ(rr.order(), 20u);
    for (Vertex v = 0; v < 20; ++v) EXPECT_EQ(rr.degree(v), 3u);
    EXPECT_THROW(random_regular(5, 3, 1), std::invalid_argument);
    EXPECT_TRUE(random_regular(20, 3, 1) == rr);
    EXPECT_EQ(star_graph(4).degree(0), 4u);
    EXPECT_THROW(cycle_graph(2), std::invalid_argument);
}

TEST(Generators, RepeatedUnion) {
    const Graph g = repeated_union(complete_graph(3), 4, 2);
    EXPECT_EQ(g.order(), 14u);
    EXPECT_EQ(g.size(), 12u);
    EXPECT_EQ(components(g).size(), 6u);
}

TEST(Paley, FiveIsTheFiveCycle) {
    const Graph g = paley(5);
    EXPECT_TRUE(g == cycle_graph(5));
}

TEST(Paley, Errors) {
    EXPECT_THROW(paley(7), std::invalid_argument);
    EXPECT_THROW(paley(21), std::invalid_argument);
    EXPECT_THROW(paley(9), std::invalid_argument);
}

TEST(Paley, StronglyRegularAndSelfComplementary) {
    for (std::uint64_t p : {5, 13, 17, 29, 37}) {
        const Graph g = paley(p);
        const std::size_t k = (p - 1) / 2, lambda = (p - 5) / 4, mu = (p - 1) / 4;
        for (Vertex u = 0; u < p; ++u) {
            EXPECT_EQ(g.degree(u), k);
            for (Vertex v = u + 1; v < p; ++v) EXPECT_EQ(g.common_neighbors(u, v), g.adjacent(u, v) ? lambda : mu);
        }
        // x -> n x for a non-residue n maps G onto its complement.
        std::uint64_t nonresidue = 2;
        while (g.adjacent(0, nonresidue)) ++nonresidue;
        const Graph comp = complement(g);
        for (Vertex u = 0; u < p; ++u)
            for (Vertex v = u + 1; v < p; ++v) EXPECT_EQ(g.adjacent(u, v), comp.adjacent(u * nonresidue % p, v * nonresidue % p));
    }
}

TEST(Psl2Cayley, SizesAndRegularity) {
    for (std::uint64_t p : {5, 7, 11}) {
        const Graph g = psl2_cayley(p);
        EXPECT_EQ(g.order(), p * (p * p - 1) / 2);
        for (Vertex v = 0; v < g.order(); ++v) ASSERT_EQ(g.degree(v), 4u);
        EXPECT_TRUE(is_connected(g));
    }
    EXPECT_THROW(psl2_cayley(3), std::invalid_argument);
    EXPECT_THROW(psl2_cayley(9), std::invalid_argument);
}

TEST(Psl2Cayley, SphereProfilesAgree) {
    for (std::uint64_t p : {5, 7}) {
        const Graph g = psl2_cayley(p);
        std::vector<std::size_t> reference;
        for (Vertex v = 0; v < g.order(); ++v) {
            std::map<int, std::size_t> spheres;
            for (int dist : bfs_distances(g, v)) ++spheres[dist];
            std::vector<std::size_t> profile;
            for (auto [dist, count] : spheres) profile.push_back(count);
            if (v == 0)
                reference = profile;
            else
                ASSERT_EQ(profile, reference) << "vertex " << v;
        }
    }
}

TEST(Graph6, KnownEncodings) {
    EXPECT_EQ(to_graph6(complete_graph(2)), "A_");
    EXPECT_EQ(to_graph6(complete_graph(3)), "Bw");
    EXPECT_EQ(to_graph6(complete_graph(4)), "C~");
    EXPECT_EQ(to_graph6(path_graph(3)), "Bg");
    EXPECT_EQ(to_graph6(empty_graph(0)), "?");
    const Graph petersen = from_graph6("IheA@GUAo");
    EXPECT_EQ(petersen.order(), 10u);
    EXPECT_EQ(petersen.size(), 15u);
    for (Vertex v = 0; v < 10; ++v) EXPECT_EQ(petersen.degree(v), 3u);
    EXPECT_TRUE(isomorphic(petersen, petersen_graph()));
}

TEST(Graph6, RoundTripIncludingLongForm) {
    Rng rng(8);
    for (std::size_t n : {1, 5, 62, 63, 64, 100, 300}) {
        const Graph g = oracle::random_graph(n, 0.3, rng);
        const std::string s = to_graph6(g);
        EXPECT_TRUE(from_graph6(s) == g) << n;
        EXPECT_TRUE(from_graph6(">>graph6<<" + s + "\n") == g) << n;
    }
}

TEST(Graph6, RejectsMalformed) {
    EXPECT_THROW(from_graph6(""), std::invalid_argument);
    EXPECT_THROW(from_graph6("B"), std::invalid_argument);
    EXPECT_THROW(from_graph6("Bx"), std::invalid_argument);  // nonzero padding
}

TEST(EdgeListJson, RoundTrip) {
    const Graph g = petersen_graph();
    EXPECT_TRUE(from_edge_list_json(to_edge_list_json(g)) == g);
    const auto dir = std::filesystem::temp_directory_path();
    const std::string json_path = (dir / "eqkit_test_graph.json").string();
    const std::string g6_path = (dir / "eqkit_test_graph.g6").string();
    std::ofstream(json_path) << to_edge_list_json(g).dump();
    std::ofstream(g6_path) << "\n" << to_graph6(g) << "\n";
    EXPECT_TRUE(read_graph_file(json_path) == g);
    EXPECT_TRUE(read_graph_file(g6_path) == g);
    EXPECT_THROW(read_graph_file((dir / "eqkit_missing_file").string()), std::runtime_error);
}
