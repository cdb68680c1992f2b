#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "lbc/word.hpp"

using namespace lbc;

namespace {

Word W(const char* s) { return Word::from_string(s); }

// Straight-from-the-definition oracle: every even window length, every
// offset, recount the weight from scratch.
bool strongly_balanced_naive(const Word& w, ConstraintParams p) {
    for (std::size_t lp = p.ell; lp <= w.size(); lp += 2) {
        for (std::size_t i = 1; i + lp - 1 <= w.size(); ++i) {
            const auto wt = weight(window(w, i, lp));
            if (wt + p.delta < lp / 2 || wt > lp / 2 + p.delta) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("weight counts one-symbols") {
    CHECK(weight(W("000000")) == 0);
    CHECK(weight(W("100001")) == 2);
    CHECK(weight(W("011001100110")) == 6);
    CHECK(weight(Word{}) == 0);
}

TEST_CASE("window slices 1-based") {
    CHECK(window(W("100001"), 2, 4) == W("0000"));
    CHECK(window(W("100001"), 1, 6) == W("100001"));
    CHECK(window(W("10110"), 3, 2) == W("11"));
    CHECK_THROWS_AS(window(W("10110"), 0, 2), std::out_of_range);
    CHECK_THROWS_AS(window(W("10110"), 5, 2), std::out_of_range);
    CHECK_THROWS_AS(window(W("10110"), 1, 6), std::out_of_range);
}

TEST_CASE("rds runs from s_0 = 0 with unit steps") {
    CHECK(rds(W("100001")).values == std::vector<int>{0, 1, 0, -1, -2, -3, -2});
    CHECK(rds(Word{}).values == std::vector<int>{0});
    CHECK(rds(W("11")).values == std::vector<int>{0, 1, 2});
}

TEST_CASE("dis is the running-sum spread") {
    CHECK(dis(W("100001")) == 4);
    CHECK(dis(Word{}) == 0);
    CHECK(dis(W("0101")) == 1);
}

TEST_CASE("local balance checks every full window") {
    const ConstraintParams p61{6, 1};
    CHECK(is_locally_balanced(W("000111"), p61));
    CHECK(is_locally_balanced(W("000011"), p61));   // weight 2 sits on the band edge
    CHECK_FALSE(is_locally_balanced(W("000001"), p61));
    CHECK_FALSE(is_locally_balanced(W("100001"), ConstraintParams{4, 1}));
    CHECK(is_locally_balanced(W("10100"), p61));    // shorter than ell: vacuous
}

TEST_CASE("strong balance covers all even window lengths") {
    const ConstraintParams p41{4, 1};
    for (std::size_t n : {4u, 7u, 12u, 31u}) {
        std::vector<std::uint8_t> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = i % 2;
        CHECK(is_strongly_locally_balanced(Word(bits), p41));
    }
    CHECK(is_strongly_locally_balanced(W("110011"), p41));
    // confirmed by the naive oracle below: every even window of 111000111 is
    // within one of half its length
    CHECK(is_strongly_locally_balanced(W("111000111"), p41));
    CHECK(strongly_balanced_naive(W("111000111"), p41));
    CHECK_FALSE(is_strongly_locally_balanced(W("110111"), p41));
}

TEST_CASE("complement flips symbols") {
    CHECK(complement(W("000")) == W("111"));
    CHECK(complement(Word{}) == Word{});
    CHECK(complement(W("0110")) == W("1001"));
}

TEST_CASE("word construction rejects non-binary symbols") {
    CHECK_THROWS_AS(Word(std::vector<std::uint8_t>{0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Word::from_string("012"), std::invalid_argument);
}

TEST_CASE("value and from_value are msb-first inverses") {
    CHECK(W("01101").value() == 13);
    CHECK(Word::from_value(13, 5) == W("01101"));
    CHECK_THROWS_AS(Word::from_value(8, 3), std::invalid_argument);
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS(ConstraintParams(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(ConstraintParams(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ConstraintParams(4, 0), std::invalid_argument);
}

TEST_CASE("exhaustive: dis agrees with an independent rds scan, n <= 16") {
    for (unsigned n = 0; n <= 16; ++n) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
            const Word w = Word::from_value(code, n);
            const auto seq = rds(w).values;
            const auto [mn, mx] = std::minmax_element(seq.begin(), seq.end());
            if (dis(w) != *mx - *mn) {
                FAIL("dis mismatch at " << w.str());
            }
        }
    }
}

TEST_CASE("exhaustive: strong (4,1) balance is equivalent to dis <= 3, n <= 16") {
    const ConstraintParams p41{4, 1};
    for (unsigned n = 0; n <= 16; ++n) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
            const Word w = Word::from_value(code, n);
            const bool strong = is_strongly_locally_balanced(w, p41);
            if (strong != (dis(w) <= 3)) {
                FAIL("equivalence broken at " << w.str());
            }
        }
    }
}

TEST_CASE("complement is an involution and negates the running sum") {
    std::mt19937 rng(7);
    for (int t = 0; t < 500; ++t) {
        const unsigned n = rng() % 40;
        std::vector<std::uint8_t> bits(n);
        for (auto& b : bits) b = rng() & 1;
        const Word w{bits};
        const Word c = complement(w);
        REQUIRE(complement(c) == w);
        const auto rw = rds(w).values;
        const auto rc = rds(c).values;
        for (std::size_t i = 0; i < rw.size(); ++i) REQUIRE(rc[i] == -rw[i]);
        REQUIRE(dis(c) == dis(w));
    }
}

TEST_CASE("strong balance implies plain balance") {
    std::mt19937 rng(99);
    for (int t = 0; t < 500; ++t) {
        const unsigned n = rng() % 18;
        const Word w = Word::from_value(rng() & ((std::uint64_t{1} << n) - 1), n);
        for (unsigned ell : {4u, 6u, 8u}) {
            for (unsigned delta : {1u, 2u}) {
                const ConstraintParams p{ell, delta};
                if (is_strongly_locally_balanced(w, p)) REQUIRE(is_locally_balanced(w, p));
                REQUIRE(is_strongly_locally_balanced(w, p) == strongly_balanced_naive(w, p));
            }
        }
    }
}
