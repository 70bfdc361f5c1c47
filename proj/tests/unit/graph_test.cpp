#include "doctest.h"

#include <functional>
#include <random>
#include <set>

#include "schreierlab/amoeba.hpp"
#include "schreierlab/graph.hpp"
#include "../support/testutil.hpp"

using namespace schreierlab;
using namespace schreierlab::testutil;

namespace {

// Oracle: does g admit a proper edge coloring with c colors? Brute force.
bool colorable(const LabeledGraph& g, int c) {
    std::vector<int> col(g.edge_count(), -1);
    std::function<bool(std::size_t)> go = [&](std::size_t ei) {
        if (ei == g.edge_count()) return true;
        for (int k = 0; k < c; ++k) {
            bool clash = false;
            const auto& e = g.edges()[ei];
            for (VertexId end : {e.u, e.v})
                for (auto [n, other] : g.adjacency(g.index_of(end)))
                    if (other < ei && col[other] == k) clash = true;
            if (clash) continue;
            col[ei] = k;
            if (go(ei + 1)) return true;
            col[ei] = -1;
        }
        return false;
    };
    return go(0);
}

void check_proper(const LabeledGraph& g, const EdgeColoring& col) {
    for (std::size_t e1 = 0; e1 < g.edge_count(); ++e1)
        for (std::size_t e2 = e1 + 1; e2 < g.edge_count(); ++e2) {
            const auto &a = g.edges()[e1], &b = g.edges()[e2];
            bool incident = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
            if (incident) CHECK(col.color_of_edge[e1] != col.color_of_edge[e2]);
        }
}

} // namespace

TEST_CASE("degree accounting with label multiplicities and loops") {
    auto m = Amoeba::minimal().graph();
    CHECK(m.vertex_count() == 2);
    CHECK(m.edge_count() == 1); // the plain edge count ignores multiplicity
    CHECK(m.loop_count() == 4);
    for (VertexId v : m.vertices()) {
        CHECK(m.degree(v) == 4);       // A,B on the double edge + C,D loops
        CHECK(m.plain_degree(v) == 1);
        CHECK(m.measure_degree(v) == 3);
    }
    CHECK_THROWS_AS(m.index_of(17), error);
}

TEST_CASE("proper edge coloring: examples and greedy bound") {
    LabeledGraph single;
    single.add_vertex(0);
    single.add_vertex(1);
    single.add_edge(0, 1, "x");
    single.finalize();
    CHECK(proper_edge_coloring(single).colors == 1);

    auto p3 = path_graph(3);
    auto c3 = proper_edge_coloring(p3);
    CHECK(c3.colors == 2);
    check_proper(p3, c3);

    auto c5 = cycle_graph(5);
    auto col5 = proper_edge_coloring(c5);
    CHECK(col5.colors == 3); // odd cycle
    check_proper(c5, col5);
    CHECK(!colorable(c5, 2)); // oracle: no proper 2-coloring exists
    CHECK(colorable(c5, 3));

    CHECK_THROWS_AS(proper_edge_coloring(Amoeba::minimal().graph()), error); // loops

    std::mt19937_64 rng(512);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_bounded_graph(rng, 10, 4, 16);
        auto col = proper_edge_coloring(g);
        CHECK(col.colors <= 2 * g.degree_bound() - 1);
        check_proper(g, col);
    }
}

TEST_CASE("coloring exposes the graph as a C2-free-product Schreier graph") {
    auto c5 = cycle_graph(5);
    auto col = proper_edge_coloring(c5);
    auto relabeled = coloring_as_labeled_graph(c5, col);
    CHECK(relabeled.edge_count() == 5);
    std::set<std::string> names(relabeled.label_names().begin(), relabeled.label_names().end());
    CHECK(names == std::set<std::string>{"c1", "c2", "c3"});
}

TEST_CASE("basic subgraph decomposition covers edges by partial matchings") {
    LabeledGraph single;
    single.add_vertex(4);
    single.add_vertex(9);
    single.add_edge(4, 9, "x");
    single.finalize();
    auto dec1 = basic_subgraph_decomposition(single);
    REQUIRE(dec1.size() == 1);
    CHECK(dec1[0].pairs == std::vector<std::pair<VertexId, VertexId>>{{4, 9}});

    CHECK(basic_subgraph_decomposition(path_graph(3)).size() == 2);
    CHECK(basic_subgraph_decomposition(cycle_graph(5)).size() == 3);

    std::mt19937_64 rng(513);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_bounded_graph(rng, 12, 4, 18);
        auto dec = basic_subgraph_decomposition(g);
        CHECK(dec.size() <= 2 * (std::size_t)g.degree_bound() - 1);
        std::size_t covered = 0;
        std::set<std::pair<VertexId, VertexId>> seen;
        for (const auto& bs : dec) {
            std::set<VertexId> touched;
            for (auto [x, y] : bs.pairs) {
                CHECK(g.find_edge(x, y).has_value());      // pairs are ambient edges
                CHECK(touched.insert(x).second);           // partial matching
                CHECK(touched.insert(y).second);
                CHECK(seen.insert({std::min(x, y), std::max(x, y)}).second); // edge-disjoint
                ++covered;
            }
        }
        CHECK(covered == g.edge_count());
    }
}

TEST_CASE("balls: radius zero, paths, the minimal amoeba") {
    auto m = Amoeba::minimal().graph();
    auto b0 = ball(m, 0, 0);
    CHECK(b0.graph.vertex_count() == 1);
    CHECK(b0.graph.loop_count() == 2); // loops at the root are kept

    auto p10 = path_graph(10);
    auto b1 = ball(p10, 5, 1);
    CHECK(b1.graph.vertex_count() == 3);
    CHECK(b1.graph.edge_count() == 2);

    auto whole = ball(m, 1, 1); // diameter 1: the whole amoeba
    CHECK(whole.graph == m);

    CHECK_THROWS_AS(ball(p10, 77, 1), error);

    // ball(r) is contained in ball(r+1)
    for (int r = 0; r < 4; ++r) {
        auto small = ball(p10, 3, r), big = ball(p10, 3, r + 1);
        for (VertexId v : small.graph.vertices()) CHECK(big.graph.has_vertex(v));
    }
}
