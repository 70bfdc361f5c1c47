#include "doctest.h"

#include <random>
#include <set>

#include "schreierlab/actions.hpp"

using namespace schreierlab;

namespace {

F2ZConfig two_anchor_config(int sign0) {
    F2ZConfig cfg;
    cfg.n_min = 0;
    cfg.anchors = {0, 3};
    cfg.signs = {sign0, 1};
    return cfg;
}

int64_t s_of(const PermutationAction& a, std::int64_t x) { return *a.apply(0, 1, x); }
int64_t t_of(const PermutationAction& a, std::int64_t x) { return *a.apply(1, 1, x); }

} // namespace

TEST_CASE("f2z six rules on one even block") {
    auto a = f2z_build(two_anchor_config(+1));
    CHECK(s_of(a, 0) == 1);
    CHECK(s_of(a, 1) == 2);
    CHECK(s_of(a, 2) == 3);
    CHECK(s_of(a, 3) == 0);
    CHECK(t_of(a, 1) == 1);
    CHECK(t_of(a, 2) == 2);

    auto b = f2z_build(two_anchor_config(-1));
    CHECK(s_of(b, 1) == 0);
    CHECK(s_of(b, 2) == 1);
    CHECK(s_of(b, 3) == 2);
    CHECK(s_of(b, 0) == 3);

    // t at the anchors needs the absent odd blocks
    CHECK(!a.apply(1, 1, 0).has_value());
    CHECK(!a.apply(1, 1, 3).has_value());
    // queries outside the anchor range escape
    CHECK(!a.apply(0, 1, -1).has_value());
    CHECK(!a.apply(0, 1, 4).has_value());
}

TEST_CASE("act_word: identity, cycles, inverses, boundary escape") {
    auto f2 = Presentation::f2();
    auto a = f2z_build(two_anchor_config(+1));

    CHECK(act_word(a, Word(), 7) == 7);
    CHECK(act_word(a, Word::parse(f2, "s s s s"), 0) == 0); // (0 1 2 3) is a 4-cycle
    CHECK(act_word(a, Word::parse(f2, "s^-1"), 1) == 0);

    try {
        act_word(a, Word::parse(f2, "s t"), 0); // t(0) escapes
        FAIL("expected boundary escape");
    } catch (const boundary_escape& e) {
        CHECK(e.prefix == "t");
        CHECK(e.start_point == 0);
    }
}

TEST_CASE("default config: orbit structure and composition law") {
    auto cfg = F2ZConfig::default_config(256);
    cfg.validate();
    auto a = f2z_build(cfg);
    auto f2 = Presentation::f2();

    // s-orbits: even anchor blocks are cycles, odd-block interiors are fixed
    for (std::size_t k = 0; k + 1 < cfg.anchors.size(); ++k) {
        std::int64_t n = cfg.n_min + (std::int64_t)k;
        std::int64_t L = cfg.anchors[k], R = cfg.anchors[k + 1];
        bool even = ((n % 2) + 2) % 2 == 0;
        if (even) {
            auto orbit = generator_orbit(a, 0, L); // symbol 0 = s
            REQUIRE(orbit.has_value());
            CHECK((std::int64_t)orbit->size() == R - L + 1);
            std::set<std::int64_t> got(orbit->begin(), orbit->end());
            for (std::int64_t j = L; j <= R; ++j) CHECK(got.count(j) == 1);
            for (std::int64_t j = L + 1; j < R; ++j) CHECK(t_of(a, j) == j);
        } else {
            for (std::int64_t j = L + 1; j < R; ++j) CHECK(s_of(a, j) == j);
        }
    }

    // act_word(w1 w2, x) = act_word(w1, act_word(w2, x)) where defined
    std::mt19937_64 rng(99);
    auto words = enumerate_reduced(f2, 3);
    std::uniform_int_distribution<std::size_t> pw(0, words.size() - 1);
    std::uniform_int_distribution<std::int64_t> px(-200, 200);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Word &w1 = words[pw(rng)], &w2 = words[pw(rng)];
        std::int64_t x = px(rng);
        try {
            std::int64_t lhs = act_word(a, Word::concat(f2, w1, w2), x);
            std::int64_t rhs = act_word(a, w1, act_word(a, w2, x));
            CHECK(lhs == rhs);
            ++checked;
        } catch (const boundary_escape&) {
            // deep inside a 256-radius config these are rare; skip
        }
    }
    CHECK(checked > 400);
}

TEST_CASE("faithfulness sweep: witnesses, exclusions, degenerate config") {
    auto cfg = F2ZConfig::default_config(80);
    auto a = f2z_build(cfg);
    auto window = interval_window(-64, 64);

    auto rep = faithfulness_witnesses(a, 2, window);
    for (const auto& [w, witness] : rep.witnesses) {
        CHECK(!w.empty()); // the identity is excluded from the sweep
        CHECK(witness.has_value());
    }
    auto serial = faithfulness_witnesses_serial(a, 2, window);
    REQUIRE(serial.witnesses.size() == rep.witnesses.size());
    for (std::size_t i = 0; i < rep.witnesses.size(); ++i) {
        CHECK(rep.witnesses[i].first == serial.witnesses[i].first);
        CHECK(rep.witnesses[i].second == serial.witnesses[i].second);
    }

    // a window strictly inside one odd block: s acts trivially there
    F2ZConfig degenerate;
    degenerate.n_min = 1;
    degenerate.anchors = {0, 10};
    degenerate.signs = {1, 1};
    auto b = f2z_build(degenerate);
    auto drep = faithfulness_witnesses(b, 1, interval_window(1, 9));
    auto f2 = Presentation::f2();
    for (const auto& [w, witness] : drep.witnesses) {
        if (w.str(f2) == "s" || w.str(f2) == "s^-1") CHECK(!witness.has_value());
        if (w.str(f2) == "t") CHECK(witness == 1);
    }
}

TEST_CASE("displacement profile: identity, exact block counts, bound") {
    // identity generator: all fractions zero
    std::unordered_map<std::int64_t, std::int64_t> id;
    for (int x = 0; x < 12; ++x) id[x] = x;
    auto ida = table_action(Presentation::free_group({"g"}), {id});
    auto prof0 = displacement_profile(ida, 0, interval_window(0, 11), std::nullopt, 4);
    for (const auto& f : prof0.fraction) CHECK(f == Rational(0));
    CHECK(prof0.boundary_correction == Rational(0));
    CHECK(prof0.within_bound);

    // anchor gaps all 3: window of two whole s-blocks, n = 2
    F2ZConfig cfg;
    cfg.n_min = 0;
    cfg.anchors = {0, 3, 6, 9, 12};
    cfg.signs = {1, 1, 1, 1, 1};
    auto a = f2z_build(cfg);
    std::vector<std::int64_t> window;
    for (std::int64_t j = 0; j <= 3; ++j) window.push_back(j);   // block 0
    for (std::int64_t j = 6; j <= 9; ++j) window.push_back(j);   // block 2
    auto prof = displacement_profile(a, 0, window, std::nullopt, 3);
    CHECK(prof.boundary_correction == Rational(0));
    // each 4-cycle has exactly one wrap point of displacement 3
    CHECK(prof.fraction[0] == Rational(1));        // n=1: everything moves by >= 1
    CHECK(prof.fraction[1] == Rational(2, 8));     // n=2: the two wrap points
    CHECK(prof.fraction[2] == Rational(2, 8));     // n=3: same points, span 3
    CHECK(prof.fraction[1] <= Rational(1, 2));
    CHECK(prof.within_bound);

    auto serial = displacement_profile_serial(a, 0, window, std::nullopt, 3);
    CHECK(serial.fraction == prof.fraction);
    CHECK(serial.boundary_correction == prof.boundary_correction);
}

TEST_CASE("snake bijections have unit steps and cover boxes") {
    auto line = SnakeBijection::line();
    CHECK(line.map(5) == std::vector<std::int64_t>{5});
    CHECK(line.map(-3) == std::vector<std::int64_t>{-3});

    auto plane = SnakeBijection::plane();
    CHECK(plane.map(0) == std::vector<std::int64_t>{0, 0});
    std::set<std::vector<std::int64_t>> seen;
    auto prev = plane.map(-2001);
    for (std::int64_t n = -2000; n <= 2000; ++n) {
        auto c = plane.map(n);
        CHECK(SnakeBijection::l1(prev, c) == 1); // d(phi(n), phi(n+1)) <= K with K = 1
        CHECK(seen.insert(c).second);            // injective on the range
        prev = c;
    }
    // the range covers the box [-10,10]^2 entirely
    for (std::int64_t x = -10; x <= 10; ++x)
        for (std::int64_t y = -10; y <= 10; ++y) CHECK(seen.count({x, y}) == 1);
}

TEST_CASE("schreier graphs of translations and the f2z block") {
    // Z-translation on {0..9}: a path
    GridWindow win1{{{0, 9}}};
    auto za = zd_translation_action(win1);
    auto res = schreier(za, win1.all_ids());
    CHECK(res.graph.vertex_count() == 10);
    CHECK(res.graph.edge_count() == 9);
    CHECK(res.graph.loop_count() == 0);
    CHECK(res.boundary_drops == 2);

    // one s-block of span 3: an s-labeled 4-cycle with t-loops inside
    F2ZConfig cfg;
    cfg.n_min = 0;
    cfg.anchors = {0, 3};
    cfg.signs = {1, 1};
    auto a = f2z_build(cfg);
    auto blk = schreier(a, interval_window(0, 3));
    CHECK(blk.graph.vertex_count() == 4);
    CHECK(blk.graph.edge_count() == 4); // the 4-cycle 0-1-2-3-0
    REQUIRE(blk.graph.find_edge(0, 1).has_value());
    CHECK(blk.graph.edge_label_names(blk.graph.edges()[*blk.graph.find_edge(0, 1)]) ==
          std::vector<std::string>{"s"});
    CHECK(blk.graph.edge_label_names(blk.graph.edges()[*blk.graph.find_edge(0, 3)]) ==
          std::vector<std::string>{"s^-1"});
    for (VertexId interior : {1, 2}) { // t and t^-1 fix the block interior
        const auto& loops = blk.graph.loop_labels(interior);
        REQUIRE(loops.size() == 2);
        CHECK(blk.graph.label_name(loops[0]) == "t");
        CHECK(blk.graph.label_name(loops[1]) == "t^-1");
    }
    CHECK(blk.boundary_drops == 4); // t and t^-1 escape at both anchors

    // degree bound is the symmetric generating set size
    for (VertexId v : blk.graph.vertices()) CHECK(blk.graph.degree(v) <= 4);
}

TEST_CASE("f2z config text round-trip") {
    auto cfg = F2ZConfig::default_config(100);
    auto back = F2ZConfig::from_text(cfg.to_text());
    CHECK(back == cfg);
    CHECK_THROWS_AS(F2ZConfig::from_text("anchors 0 1\n"), error);
}
