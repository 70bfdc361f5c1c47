#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "schreierlab/amoeba.hpp"
#include "../support/testutil.hpp"

using namespace schreierlab;
using namespace schreierlab::testutil;

TEST_CASE("minimal amoeba: counts, degrees, basic cycles") {
    auto m = Amoeba::minimal();
    CHECK(m.vertex_count() == 2);
    for (VertexId v : m.graph().vertices()) CHECK(m.graph().degree(v) == 4);
    CHECK(m.basic_cycles().size() == 5); // the AB 2-cycle and four loops
    int loops = 0, cycles = 0;
    for (const auto& c : m.basic_cycles()) (c.is_loop ? loops : cycles)++;
    CHECK(loops == 4);
    CHECK(cycles == 1);
    CHECK(verify_amoeba(m.graph()).ok);
}

TEST_CASE("verify catches broken amoebas") {
    // delete one C-loop: vertex 0 loses its C incidence
    LabeledGraph g;
    g.set_degree_bound(4);
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(0, 1, "A");
    g.add_edge(0, 1, "B");
    g.add_loop(0, "D");
    g.add_loop(1, "C");
    g.add_loop(1, "D");
    g.finalize();
    auto rep = verify_amoeba(g);
    CHECK(!rep.ok);
    CHECK(rep.violation.find("label") != std::string::npos);

    // two disjoint minimal amoebas: connectivity fails
    LabeledGraph two;
    two.set_degree_bound(4);
    for (int b : {0, 2}) {
        two.add_vertex(b);
        two.add_vertex(b + 1);
        two.add_edge(b, b + 1, "A");
        two.add_edge(b, b + 1, "B");
        for (int i = 0; i < 2; ++i) {
            two.add_loop(b + i, "C");
            two.add_loop(b + i, "D");
        }
    }
    two.finalize();
    auto rep2 = verify_amoeba(two);
    CHECK(!rep2.ok);
    CHECK(rep2.violation.find("components") != std::string::npos);

    // a loop labeled A is rejected
    LabeledGraph badloop;
    badloop.set_degree_bound(4);
    badloop.add_vertex(0);
    badloop.add_vertex(1);
    badloop.add_edge(0, 1, "A");
    badloop.add_edge(0, 1, "B");
    badloop.add_loop(0, "C");
    badloop.add_loop(0, "D");
    badloop.add_loop(1, "A");
    badloop.add_loop(1, "D");
    badloop.finalize();
    CHECK(!verify_amoeba(badloop).ok);
}

TEST_CASE("doubling the AB cycle of the minimal amoeba") {
    auto m = Amoeba::minimal();
    std::size_t ab = 0;
    while (m.basic_cycles()[ab].is_loop) ++ab;
    auto [h, phi] = double_amoeba(m, CycleMove{ab});

    CHECK(h.vertex_count() == 4);
    CHECK(verify_amoeba(h.graph()).ok);
    // an A/B-alternating 4-cycle: every edge single-labeled, 4 edges total
    CHECK(h.graph().edge_count() == 4);
    for (const auto& e : h.graph().edges()) CHECK(e.labels.size() == 1);
    // C and D loops at every vertex
    for (VertexId v : h.graph().vertices()) {
        const auto& loops = h.graph().loop_labels(v);
        REQUIRE(loops.size() == 2);
        CHECK(h.graph().label_name(loops[0]) == "C");
        CHECK(h.graph().label_name(loops[1]) == "D");
    }
    // fibers all exactly 2
    std::map<VertexId, int> fiber;
    for (const auto& [src, dst] : phi.map) ++fiber[dst];
    for (const auto& [v, n] : fiber) CHECK(n == 2);
    CHECK(verify_covering(h, m, phi).ok);
}

TEST_CASE("doubling a loop pair joins the lifts by a 2-cycle") {
    auto m = Amoeba::minimal();
    auto [h, phi] = double_amoeba(m, LoopMove{0});
    CHECK(h.vertex_count() == 4);
    CHECK(verify_amoeba(h.graph()).ok);
    // lifts of vertex 0 are 0 and 2 (offset 2); they carry the C/D 2-cycle
    auto ei = h.graph().find_edge(0, 2);
    REQUIRE(ei.has_value());
    CHECK(h.graph().edge_label_names(h.graph().edges()[*ei]) ==
          std::vector<std::string>{"C", "D"});
    CHECK(h.graph().loop_labels(0).empty());
    CHECK(h.graph().loop_labels(2).empty());
    // the untouched vertex keeps its loops on both sheets
    CHECK(h.graph().loop_labels(1).size() == 2);
    CHECK(h.graph().loop_labels(3).size() == 2);
    CHECK(verify_covering(h, m, phi).ok);

    // move preconditions
    CHECK_THROWS_AS(double_amoeba(h, LoopMove{0}), error); // no loops at 0 anymore
    std::size_t loop_id = 0;
    while (!m.basic_cycles()[loop_id].is_loop) ++loop_id;
    CHECK_THROWS_AS(double_amoeba(m, CycleMove{loop_id}), error);
}

TEST_CASE("tree radius: minimal, loop-doubled, scheduled levels") {
    auto m = Amoeba::minimal();
    CHECK(tree_radius(m, 0) == -1); // loops at the root
    CHECK(tree_radius(m, 1) == -1);

    auto [h, phi] = double_amoeba(m, LoopMove{0});
    CHECK(tree_radius(h, 0) == 0); // no loop at the lift; the CD 2-cycle sits at distance 1

    auto tower = build_tower(3);
    for (auto [k, level] : tower.schedule) {
        CHECK(tree_radius(tower.levels[level], tower.basepoints[level]) >= k);
        CHECK(tower.radii[level] >= k);
    }
    // radii never decrease along the tower
    for (std::size_t i = 0; i + 1 < tower.radii.size(); ++i)
        CHECK(tower.radii[i] <= tower.radii[i + 1]);
}

TEST_CASE("build_tower: sizes, schedule, projections") {
    auto tower = build_tower(2);
    REQUIRE(!tower.levels.empty());
    for (std::size_t i = 0; i < tower.levels.size(); ++i)
        CHECK(tower.levels[i].vertex_count() == (std::size_t)2 << i); // 2^n doubling

    // k = 1 needs at least 3 doublings: both loop pairs near p plus the AB cycle
    auto t1 = build_tower(1);
    CHECK(t1.levels.size() >= 4);
    CHECK(t1.radii[t1.schedule[0].second] >= 1);

    for (std::size_t m = 0; m < tower.levels.size(); ++m)
        for (std::size_t n = 0; n <= m; ++n)
            CHECK(tower.project(m, n, tower.basepoints[m]) == tower.basepoints[n]);

    // every level passes verify and every covering verifies
    for (const auto& lvl : tower.levels) CHECK(verify_amoeba(lvl.graph()).ok);
    for (std::size_t i = 0; i + 1 < tower.levels.size(); ++i)
        CHECK(verify_covering(tower.levels[i + 1], tower.levels[i], tower.coverings[i]).ok);

    // the vertex budget guards construction
    CHECK_THROWS_AS(build_tower(4, 16), error);
}

TEST_CASE("gamma action: involutions, loops fix, coverings commute") {
    auto m = Amoeba::minimal();
    CHECK(m.act("C", 0) == 0); // loop: C fixes
    CHECK(m.act("D", 1) == 1);
    CHECK(m.act("A", 0) == 1); // the AB 2-cycle
    CHECK(m.act("B", 1) == 0);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = random_tower(rng, 5);
        const auto& top = t.levels.back();
        for (VertexId v : top.graph().vertices())
            for (const char* gen : {"A", "B", "C", "D"})
                CHECK(top.act(gen, top.act(gen, v)) == v); // order 2

        // equivariance through every covering
        for (std::size_t i = 0; i + 1 < t.levels.size(); ++i) {
            const auto& h = t.levels[i + 1];
            const auto& g = t.levels[i];
            for (VertexId v : h.graph().vertices())
                for (const char* gen : {"A", "B", "C", "D"})
                    CHECK(t.coverings[i].map.at(h.act(gen, v)) ==
                          g.act(gen, t.coverings[i].map.at(v)));
        }
    }
}

TEST_CASE("amoeba action matches words module evaluation") {
    auto m = Amoeba::minimal();
    const auto& p = Amoeba::group();
    Word w = Word::parse(p, "A C B");
    // right-to-left: B then C then A
    VertexId x = m.act("B", 0);
    x = m.act("C", x);
    x = m.act("A", x);
    CHECK(m.act_word(w, 0) == x);
    CHECK(m.act_word(Word(), 1) == 1);
}

TEST_CASE("freeness witnesses on a tower") {
    auto tower = build_tower(6);
    const auto& p = Amoeba::group();

    // gamma = A at the first level, both vertices
    for (VertexId q : tower.levels[0].graph().vertices()) {
        auto w = freeness_witness(tower, Word::parse(p, "A"), 0, q);
        const auto& gm = tower.levels[w.level];
        CHECK(gm.act("A", w.point) != w.point);
        CHECK(tower.project(w.level, 0, w.point) == q);
    }

    // the identity is rejected
    CHECK_THROWS_AS(freeness_witness(tower, Word(), 0, 0), error);

    // basepoint cylinder: witness inside the radius-k tree ball
    Word gamma = Word::parse(p, "A B A");
    auto w = freeness_witness(tower, gamma, 0, tower.basepoints[0]);
    CHECK(tower.levels[w.level].act_word(gamma, w.point) != w.point);

    // a schedule that is too short raises a capacity error
    auto tiny = build_tower(1);
    CHECK_THROWS_AS(
        freeness_witness(tiny, Word::parse(p, "A B A B A B A B"), 0, tiny.basepoints[0]), error);
}

TEST_CASE("level_stats: certificates, transitivity, pushforward, gaps") {
    auto tower = build_tower(2);
    auto stats = level_stats(tower, 2, 1);
    REQUIRE(stats.size() == tower.levels.size());
    CHECK(stats[0].certificate.removed_edges.empty()); // |V| = 2 <= K
    for (const auto& st : stats) {
        CHECK(st.transitive);
        CHECK(st.fibers_ok);
        CHECK(certificate_valid(tower.levels[st.level].graph(), st.certificate));
        CHECK(st.ball_census.total == (std::int64_t)tower.levels[st.level].vertex_count());
        if (st.level > 0) CHECK(st.census_gap >= Rational(0));
    }
}

TEST_CASE("random towers: every double verifies, planar, budget-scaled") {
    std::mt19937_64 rng(20250810);
    for (int trial = 0; trial < 25; ++trial) {
        auto t = random_tower(rng, 6);
        for (const auto& lvl : t.levels) {
            CHECK(verify_amoeba(lvl.graph()).ok);
            CHECK(is_planar(lvl.graph()));
        }
        for (std::size_t i = 0; i + 1 < t.levels.size(); ++i)
            CHECK(verify_covering(t.levels[i + 1], t.levels[i], t.coverings[i]).ok);
    }
}
