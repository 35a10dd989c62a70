#include "doctest.h"
#include "oracles.hpp"
#include "slpq/suffix_index.hpp"

using namespace slpq;

namespace {

std::vector<std::size_t> one_based(std::vector<std::size_t> v) {
    for (auto& x : v) ++x;
    return v;
}

}  // namespace

TEST_CASE("build_suffix_array examples") {
    CHECK(one_based(build_suffix_array("banana")) == std::vector<std::size_t>{6, 4, 2, 1, 5, 3});
    CHECK(build_suffix_array("").empty());
    CHECK(one_based(build_suffix_array("aaa")) == std::vector<std::size_t>{3, 2, 1});
    CHECK(build_suffix_array("x") == std::vector<std::size_t>{0});
}

TEST_CASE("build_lcp_array examples") {
    const std::string banana = "banana";
    CHECK(build_lcp_array(banana, build_suffix_array(banana)) == std::vector<std::size_t>{0, 1, 3, 0, 0, 2});
    CHECK(build_lcp_array("aaa", build_suffix_array("aaa")) == std::vector<std::size_t>{0, 1, 2});
    CHECK(build_lcp_array("x", build_suffix_array("x")) == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(build_lcp_array("ab", {0}), std::invalid_argument);
}

TEST_CASE("suffix and LCP arrays match naive construction") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 300; ++iter) {
        std::string text = oracle::random_text(rng, rng() % 500, 1 + iter % 6);
        if (iter % 10 == 0)
            for (auto& c : text) c = static_cast<char>(rng());  // full byte range
        const auto sa = build_suffix_array(text);
        const auto expected = oracle::suffix_array(text);
        REQUIRE(sa == expected);
        CHECK(build_lcp_array(text, sa) == oracle::lcp_array(text, expected));
    }
}

TEST_CASE("weighted_qgram_counts on the flattened running example") {
    WeightedText wt{"aabbababa", {0, 3, 5, 0, 2, 0, 1, 0, 1}, 2};
    const QGramReport r = weighted_qgram_counts(wt);
    using Hist = std::vector<std::pair<std::string, Weight>>;
    CHECK(materialize(r, wt.text) == Hist{{"aa", 3}, {"ab", 5}, {"ba", 4}});
    CHECK(r.gram == 2);
    CHECK(r.sourceLength == 9);
    // Representatives are the smallest end positions: "aa" ends at 2,
    // "ab" at 3, "ba" first ends at 5.
    CHECK(r.entries == std::vector<QGramEntry>{{2, 3}, {3, 5}, {5, 4}});
}

TEST_CASE("weighted_qgram_counts on T with unit weights") {
    const WeightedText wt = unit_weighted("aababaababaab", 2);
    CHECK(wt.endWeights.front() == 0);
    const QGramReport r = weighted_qgram_counts(wt);
    using Hist = std::vector<std::pair<std::string, Weight>>;
    CHECK(materialize(r, wt.text) == Hist{{"aa", 3}, {"ab", 5}, {"ba", 4}});
}

TEST_CASE("weighted_qgram_counts edge cases") {
    WeightedText zeros{"abcabc", std::vector<Weight>(6, 0), 2};
    CHECK(weighted_qgram_counts(zeros).entries.empty());

    WeightedText shortText = unit_weighted("ab", 3);
    CHECK(weighted_qgram_counts(shortText).entries.empty());

    WeightedText bad{"abc", {0, 1}, 2};
    CHECK_THROWS_AS(weighted_qgram_counts(bad), std::invalid_argument);
    WeightedText early{"abc", {1, 1, 1}, 2};
    CHECK_THROWS_AS(weighted_qgram_counts(early), std::invalid_argument);
    WeightedText zeroGram{"abc", {1, 1, 1}, 0};
    CHECK_THROWS_AS(weighted_qgram_counts(zeroGram), std::invalid_argument);
}

TEST_CASE("unit-weight counting equals the sliding-window histogram") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 120; ++iter) {
        const std::string text = oracle::random_text(rng, 1 + rng() % 3000, 1 + iter % 4);
        for (std::uint32_t q = 1; q <= 12; ++q) {
            const WeightedText wt = unit_weighted(text, q);
            const QGramReport r = weighted_qgram_counts(wt);
            REQUIRE(materialize(r, wt.text) == oracle::histogram(text, q));
            CHECK(total_weight(r) == total_weight(wt));
        }
    }
}

TEST_CASE("report total equals weight total for arbitrary weights") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 200; ++iter) {
        const std::uint32_t q = 1 + rng() % 6;
        WeightedText wt;
        wt.gram = q;
        wt.text = oracle::random_text(rng, rng() % 200, 2 + iter % 3);
        wt.endWeights.resize(wt.text.size());
        for (std::size_t p = 0; p < wt.text.size(); ++p) wt.endWeights[p] = p + 1 < q ? 0 : rng() % 4;
        const QGramReport r = weighted_qgram_counts(wt);
        CHECK(total_weight(r) == total_weight(wt));
        for (std::size_t k = 0; k < r.entries.size(); ++k) {
            CHECK(r.entries[k].totalWeight > 0);
            if (k > 0) CHECK(qgram_of(r, r.entries[k - 1], wt.text) < qgram_of(r, r.entries[k], wt.text));
        }
    }
}
