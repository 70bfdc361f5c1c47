#include "doctest.h"

#include <random>
#include <set>

#include "schreierlab/rational.hpp"
#include "schreierlab/words.hpp"

using namespace schreierlab;

namespace {

// Independent oracle: try every cancellation order recursively and collect
// the fixpoints; free reduction is confluent, so there must be exactly one.
void all_reductions(const std::vector<Letter>& w, bool involutive, std::set<std::vector<Letter>>& out) {
    bool any = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        bool cancels = involutive ? w[i].gen == w[i + 1].gen
                                  : (w[i].gen == w[i + 1].gen && w[i].exponent == -w[i + 1].exponent);
        if (!cancels) continue;
        any = true;
        std::vector<Letter> next;
        next.insert(next.end(), w.begin(), w.begin() + i);
        next.insert(next.end(), w.begin() + i + 2, w.end());
        all_reductions(next, involutive, out);
    }
    if (!any) out.insert(w);
}

} // namespace

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(4, 10) == Rational(2, 5));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(1, 2) * Rational(2, 3)) == Rational(1, 3));
    CHECK(Rational(-3, -7) == Rational(3, 7));
    CHECK(Rational(1, -2).str() == "-1/2");
    CHECK(Rational::parse("6/8") == Rational(3, 4));
    CHECK(Rational(0, 5).str() == "0/1");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), error);
}

TEST_CASE("reduce: cancellation examples") {
    auto f2 = Presentation::f2();
    auto c4 = Presentation::c2_star(4);

    CHECK(reduce({{0, 1}, {0, -1}}, f2).empty());       // s s^-1
    CHECK(reduce({{0, 1}, {0, 1}}, c4).empty());        // A A
    Word w = reduce({{0, 1}, {1, 1}, {1, 1}, {2, 1}}, c4); // A B B C
    CHECK(w.str(c4) == "A C");

    CHECK_THROWS_AS(reduce({{7, 1}}, f2), error); // invalid generator index
}

TEST_CASE("reduce agrees with the exhaustive cancellation oracle") {
    auto f2 = Presentation::f2();
    auto c4 = Presentation::c2_star(4);
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        bool involutive = trial % 2 == 0;
        const Presentation& p = involutive ? c4 : f2;
        std::uniform_int_distribution<int> len(0, 7), gen(0, p.rank() - 1), coin(0, 1);
        std::vector<Letter> raw;
        int L = len(rng);
        for (int i = 0; i < L; ++i)
            raw.push_back({gen(rng), involutive ? 1 : (coin(rng) ? 1 : -1)});
        std::set<std::vector<Letter>> fixpoints;
        all_reductions(raw, involutive, fixpoints);
        REQUIRE(fixpoints.size() == 1);
        CHECK(reduce(raw, p).letters() == *fixpoints.begin());
    }
}

TEST_CASE("reduce is idempotent and inverses cancel") {
    auto f2 = Presentation::f2();
    auto c4 = Presentation::c2_star(4);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(0, 10), coin(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> genf(0, 1), genc(0, 3);
        std::vector<Letter> raw;
        int L = len(rng);
        for (int i = 0; i < L; ++i) raw.push_back({genf(rng), coin(rng) ? 1 : -1});
        Word w = reduce(raw, f2);
        CHECK(reduce(w.letters(), f2) == w);
        CHECK(Word::concat(f2, w, w.inverse(f2)).empty());

        std::vector<Letter> rawc;
        for (int i = 0; i < L; ++i) rawc.push_back({genc(rng), 1});
        Word wc = reduce(rawc, c4);
        CHECK(Word::concat(c4, wc, wc.inverse(c4)).empty()); // inverse = reverse
    }
}

TEST_CASE("enumerate_reduced: order and counts") {
    auto f2 = Presentation::f2();
    auto c4 = Presentation::c2_star(4);

    auto w0 = enumerate_reduced(f2, 0);
    REQUIRE(w0.size() == 1);
    CHECK(w0[0].empty());

    auto w1 = enumerate_reduced(f2, 1);
    REQUIRE(w1.size() == 5);
    CHECK(w1[0].str(f2) == "e");
    CHECK(w1[1].str(f2) == "s");
    CHECK(w1[2].str(f2) == "s^-1");
    CHECK(w1[3].str(f2) == "t");
    CHECK(w1[4].str(f2) == "t^-1");

    CHECK(enumerate_reduced(c4, 2).size() == 17); // 1 + 4 + 4*3

    // |enumerate(F2, L)| = 1 + sum 4*3^(k-1), checked for L <= 6
    for (int L = 0; L <= 6; ++L) {
        std::uint64_t expect = 1, cur = 1;
        for (int k = 1; k <= L; ++k) {
            cur = (k == 1) ? 4 : cur * 3;
            expect += cur;
        }
        CHECK(enumerate_reduced(f2, L).size() == expect);
        CHECK(count_reduced(f2, L) == expect);
    }

    // every word reduced, distinct, sorted by (length, lex)
    auto all = enumerate_reduced(c4, 4);
    std::set<std::string> seen;
    std::size_t prev_len = 0;
    for (const auto& w : all) {
        CHECK(reduce(w.letters(), c4) == w);
        CHECK(seen.insert(w.str(c4)).second);
        CHECK(w.length() >= prev_len);
        prev_len = w.length();
    }
}

TEST_CASE("word rendering round-trips through the parser") {
    auto f2 = Presentation::f2();
    auto c4 = Presentation::c2_star(4);
    for (const auto& w : enumerate_reduced(f2, 3)) CHECK(Word::parse(f2, w.str(f2)) == w);
    for (const auto& w : enumerate_reduced(c4, 3)) CHECK(Word::parse(c4, w.str(c4)) == w);
    CHECK(Word::parse(f2, "s t^-1 s").str(f2) == "s t^-1 s");
    CHECK_THROWS_AS(Word::parse(f2, "q"), error);
    CHECK_THROWS_AS(Word::parse(f2, "s^2"), error);
}
