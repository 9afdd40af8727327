#include <gtest/gtest.h>

#include "xsat/generator.hpp"
#include "xsat/oracle.hpp"

using namespace xsat;

TEST(NaiveCount, TwoClauseExample) {
    XsatFormula f{4, {positive_triple(1, 2, 3), positive_triple(2, 3, 4)}, true};
    EXPECT_EQ(naive_count(f), 3U);
    std::vector<std::string> models;
    for (const auto& m : naive_models(f)) models.push_back(m.str());
    EXPECT_EQ(models, (std::vector<std::string>{"0010", "0100", "1001"}));
}

TEST(NaiveCount, UnsatExample) {
    XsatFormula f{4,
                  {positive_triple(1, 2, 3), positive_triple(2, 3, 4), positive_triple(1, 2, 4),
                   positive_triple(1, 3, 4)},
                  true};
    EXPECT_EQ(naive_count(f), 0U);
}

TEST(NaiveCount, SingleClause) { EXPECT_EQ(naive_count({3, {positive_triple(1, 2, 3)}, true}), 3U); }

TEST(NaiveCount, EmptyFormulaCountsAllAssignments) { EXPECT_EQ(naive_count({5, {}, true}), 32U); }

TEST(NaiveCount, CapIsEnforced) {
    try {
        naive_count({oracle_var_cap + 1, {}, true});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::capacity);
    }
}

TEST(NaiveCount, GrayCodeMatchesReference) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Var r = 6 + static_cast<Var>(seed % 7);
        XsatFormula f = gen_random({r, r / 3 + 1 + seed % 3, seed, Family::random});
        EXPECT_EQ(naive_count(f), naive_count_reference(f));
        EXPECT_EQ(naive_count(f), naive_models(f).size());
    }
}

TEST(NaiveCount, NegatedAndBottomLiterals) {
    XsatFormula f{3, {Triple(Literal::neg(1), Literal::pos(2), Literal::bottom()),
                      Triple(Literal::pos(1), Literal::neg(3), Literal::pos(2))},
                  false};
    EXPECT_EQ(naive_count(f), naive_count_reference(f));
}

TEST(NaiveCount, AddingAClauseNeverAddsModels) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        XsatFormula f = gen_random({9, 5, seed, Family::random});
        XsatFormula prefix{9, {}, true};
        std::uint64_t prev = naive_count(prefix);
        for (const auto& c : f.clauses) {
            prefix.clauses.push_back(c);
            const std::uint64_t now = naive_count(prefix);
            EXPECT_LE(now, prev);
            prev = now;
        }
    }
}

TEST(NaiveCountCnf, Examples) {
    EXPECT_EQ(naive_count_cnf({3, {{1, 2, 3}}}), 7U);
    EXPECT_EQ(naive_count_cnf({2, {}}), 4U);
    EXPECT_EQ(naive_count_cnf({1, {{1, 1, 1}, {-1, -1, -1}}}), 0U);
}
