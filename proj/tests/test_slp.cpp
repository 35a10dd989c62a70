#include "doctest.h"
#include "oracles.hpp"
#include "slpq/builder.hpp"
#include "slpq/slp.hpp"

using namespace slpq;

TEST_CASE("parse_slp reads the running example") {
    const SlpGrammar g = oracle::example7();
    CHECK(g.size() == 7);
    CHECK(g.rule(1) == Rule::make_terminal('a'));
    CHECK(g.rule(3) == Rule::make_pair(1, 2));
    CHECK(g.rule(7) == Rule::make_pair(6, 5));
}

TEST_CASE("parse_slp accepts comments, blank lines and CRLF") {
    const SlpGrammar g = parse_slp("# header\n\n1 T 97\r\n   # indented comment\n2 N 1 1\n");
    CHECK(g.size() == 2);
    CHECK(expand(g) == "aa");
}

TEST_CASE("parse_slp smallest grammar") {
    const SlpGrammar g = parse_slp("1 T 97");
    CHECK(g.size() == 1);
    CHECK(expand(g) == "a");
}

TEST_CASE("parse_slp errors") {
    CHECK_THROWS_WITH_AS(parse_slp("1 N 2 3\n"), doctest::Contains("forward reference"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("1 T 97\n2 N 1 2\n"), doctest::Contains("forward reference"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("1 T 97\n1 T 98\n"), doctest::Contains("duplicate index"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("1 T 256\n"), doctest::Contains("out of range"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("1 T 97\n2 N 0 1\n"), doctest::Contains("out of range"), ParseError);
    CHECK_THROWS_AS(parse_slp("1 T 97\n3 N 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_slp("1 X 97\n"), ParseError);
    CHECK_THROWS_AS(parse_slp("1 T\n"), ParseError);
    CHECK_THROWS_AS(parse_slp("1 T 97 98\n"), ParseError);
    CHECK_THROWS_AS(parse_slp("one T 97\n"), ParseError);
    CHECK_THROWS_AS(parse_slp("# nothing here\n"), ParseError);

    try {
        parse_slp("1 T 97\n2 T 98\n3 N 1 4\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("serialize_slp") {
    CHECK(serialize_slp(oracle::example7()) == oracle::kExample7);
    CHECK(serialize_slp(parse_slp("1 T 97")) == "1 T 97\n");
}

TEST_CASE("parse/serialize round trip on random grammars") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SlpGrammar g = build_random(1 + seed % 40, 1 + seed % 5, seed);
        CHECK(parse_slp(serialize_slp(g)) == g);
    }
}

TEST_CASE("SlpGrammar rejects non-decreasing references") {
    CHECK_THROWS_AS(SlpGrammar({Rule::make_terminal('a'), Rule::make_pair(1, 2)}), SlpError);
    CHECK_THROWS_AS(SlpGrammar(std::vector<Rule>{}), SlpError);
}

TEST_CASE("expand") {
    CHECK(expand(oracle::example7()) == "aababaababaab");
    CHECK(expand(build_chain("abc")) == "abc");
    CHECK_THROWS_AS(expand(oracle::example7(), 12), OverflowError);
}

TEST_CASE("expand handles a grammar of height 200000 without recursion") {
    std::string text(200000, 'x');
    text[77] = 'y';
    const SlpGrammar g = build_chain(text);
    CHECK(expand(g) == text);
}

TEST_CASE("compute_metrics on the running example") {
    const SlpGrammar g = oracle::example7();
    const SlpMetrics m = compute_metrics(g);
    CHECK(m.lengths == std::vector<Length>{0, 1, 1, 2, 3, 5, 8, 13});
    CHECK(m.vocc == std::vector<Weight>{0, 8, 5, 5, 3, 2, 1, 1});
    CHECK(m.textLength == 13);
    CHECK(m.vocc == oracle::tree_label_counts(g));
}

TEST_CASE("compute_metrics small cases") {
    const SlpMetrics single = compute_metrics(parse_slp("1 T 97"));
    CHECK(single.lengths == std::vector<Length>{0, 1});
    CHECK(single.vocc == std::vector<Weight>{0, 1});

    const SlpGrammar chain = parse_slp("1 T 97\n2 N 1 1\n3 N 2 1\n4 N 3 1\n");
    const SlpMetrics m = compute_metrics(chain);
    CHECK(m.vocc[1] == 4);
    CHECK(m.vocc == oracle::tree_label_counts(chain));
}

TEST_CASE("compute_metrics rejects expansions beyond 2^63 - 1") {
    std::vector<Rule> rules{Rule::make_terminal('a')};
    for (VarId i = 1; i <= 62; ++i) rules.push_back(Rule::make_pair(i, i));  // |X_63| = 2^62
    CHECK_NOTHROW(compute_metrics(SlpGrammar(rules)));
    rules.push_back(Rule::make_pair(63, 63));  // 2^63
    CHECK_THROWS_AS(compute_metrics(SlpGrammar(rules)), OverflowError);
}

TEST_CASE("metrics invariants on random grammars") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const SlpGrammar g = build_random(1 + seed % 60, 1 + seed % 4, seed);
        const SlpMetrics m = compute_metrics(g);
        const std::string t = expand(g, m);
        CHECK(t.size() == m.textLength);
        CHECK(m.vocc == oracle::tree_label_counts(g));
        Weight terminalOcc = 0;
        for (VarId i = 1; i <= g.size(); ++i)
            if (g.rule(i).terminal) terminalOcc += m.vocc[i];
        CHECK(terminalOcc == m.textLength);
    }
}

TEST_CASE("compute_qmarks on the running example") {
    const SlpGrammar g = oracle::example7();
    const SlpMetrics m = compute_metrics(g);

    const QMarks q2 = compute_qmarks(g, m, 2);
    CHECK(q2.lm == std::vector<VarId>{0, 0, 0, 3, 4, 3, 4, 4});
    CHECK(q2.rm == std::vector<VarId>{0, 0, 0, 3, 3, 3, 3, 3});
    CHECK_FALSE(q2.left_mark(1).has_value());
    CHECK(q2.left_mark(7) == 4u);

    const QMarks q14 = compute_qmarks(g, m, 14);
    CHECK(q14.lm == std::vector<VarId>(8, 0));
    CHECK(q14.rm == std::vector<VarId>(8, 0));

    const QMarks q13 = compute_qmarks(g, m, 13);
    CHECK(q13.lm == std::vector<VarId>{0, 0, 0, 0, 0, 0, 0, 7});
    CHECK(q13.rm == std::vector<VarId>{0, 0, 0, 0, 0, 0, 0, 7});

    CHECK_THROWS_AS(compute_qmarks(g, m, 1), std::invalid_argument);
}

TEST_CASE("qmarks agree with descent along the outer paths") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const SlpGrammar g = build_random(2 + seed % 50, 1 + seed % 3, seed);
        const SlpMetrics m = compute_metrics(g);
        for (std::uint32_t q = 2; q <= 12; ++q) {
            const QMarks qm = compute_qmarks(g, m, q);
            for (VarId i = 1; i <= g.size(); ++i) {
                if (m.lengths[i] < q) {
                    CHECK(qm.lm[i] == kNoVar);
                    CHECK(qm.rm[i] == kNoVar);
                    continue;
                }
                VarId v = i;
                while (!g.rule(v).terminal && m.lengths[g.rule(v).left] >= q) v = g.rule(v).left;
                CHECK(qm.lm[i] == v);
                v = i;
                while (!g.rule(v).terminal && m.lengths[g.rule(v).right] >= q) v = g.rule(v).right;
                CHECK(qm.rm[i] == v);
            }
        }
    }
}

TEST_CASE("extract_prefix and extract_suffix on the running example") {
    const SlpGrammar g = oracle::example7();
    const SlpMetrics m = compute_metrics(g);
    CHECK(extract_prefix(g, m, 7, 5) == "aabab");
    CHECK(extract_prefix(g, m, 4, 3) == "aab");
    CHECK(extract_prefix(g, m, 7, 0) == "");
    CHECK(extract_suffix(g, m, 6, 1) == "b");
    CHECK(extract_suffix(g, m, 3, 2) == "ab");
    CHECK(extract_suffix(g, m, 5, 0) == "");
    CHECK_THROWS_AS(extract_prefix(g, m, 4, 4), std::out_of_range);
    CHECK_THROWS_AS(extract_suffix(g, m, 4, 4), std::out_of_range);
    CHECK_THROWS_AS(extract_prefix(g, m, 8, 1), std::out_of_range);
}

TEST_CASE("extract_prefix/suffix match slicing the expansion") {
    std::mt19937_64 rng(7);
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const SlpGrammar g = seed % 2 ? build_random(1 + seed % 70, 1 + seed % 4, seed)
                                      : build_repair(oracle::random_text(rng, 1 + seed * 13 % 400, 3));
        const SlpMetrics m = compute_metrics(g);
        const auto val = oracle::all_values(g);
        for (VarId i = 1; i <= g.size(); ++i) {
            const Length len = m.lengths[i];
            for (Length j : {Length{0}, Length{1}, (len + 1) / 2, len}) {
                CHECK(extract_prefix(g, m, i, j) == val[i].substr(0, j));
                CHECK(extract_suffix(g, m, i, j) == val[i].substr(len - j));
            }
        }
    }
}

TEST_CASE("char_frequencies") {
    const SlpGrammar g = oracle::example7();
    const auto f = char_frequencies(g, compute_metrics(g));
    CHECK(f['a'] == 8);
    CHECK(f['b'] == 5);
    Weight sum = 0;
    for (auto c : f) sum += c;
    CHECK(sum == 13);

    CHECK(char_frequencies(parse_slp("1 T 97"), compute_metrics(parse_slp("1 T 97")))['a'] == 1);
    const SlpGrammar aaaa = build_chain("aaaa");
    CHECK(char_frequencies(aaaa, compute_metrics(aaaa))['a'] == 4);
}

TEST_CASE("unused variables are reported and can be pruned") {
    const SlpGrammar g = parse_slp("1 T 97\n2 T 98\n3 N 1 1\n4 N 1 2\n");
    CHECK(find_unused(g) == std::vector<VarId>{3});
    const SlpGrammar pruned = prune_unused(g);
    CHECK(pruned.size() == 3);
    CHECK(find_unused(pruned).empty());
    CHECK(expand(pruned) == expand(g));
    CHECK(find_unused(oracle::example7()).empty());
}
