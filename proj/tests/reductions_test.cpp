#include <gtest/gtest.h>

#include "xsat/generator.hpp"
#include "xsat/io.hpp"
#include "xsat/kernel.hpp"
#include "xsat/oracle.hpp"
#include "xsat/reductions.hpp"

using namespace xsat;

TEST(ReduceCnf, OneClauseSizes) {
    auto [x, trace] = reduce_cnf_to_xsat({3, {{1, 2, 3}}});
    EXPECT_EQ(x.num_vars, 7U);
    EXPECT_EQ(x.num_clauses(), 3U);
    EXPECT_EQ(trace.before.vars, 3U);
    EXPECT_EQ(trace.after.vars, 7U);
    EXPECT_EQ(trace.after.clauses, 3U);
    ASSERT_EQ(trace.fresh.size(), 1U);
    EXPECT_EQ(trace.fresh[0], (std::vector<Var>{4, 5, 6, 7}));
}

TEST(ReduceCnf, GadgetShape) {
    auto [x, trace] = reduce_cnf_to_xsat({3, {{1, -2, 3}}});
    ASSERT_EQ(x.clauses.size(), 3U);
    EXPECT_EQ(x.clauses[0], Triple(Literal::neg(1), Literal::pos(4), Literal::pos(5)));
    EXPECT_EQ(x.clauses[1], Triple(Literal::neg(2), Literal::pos(5), Literal::pos(6)));
    EXPECT_EQ(x.clauses[2], Triple(Literal::neg(3), Literal::pos(6), Literal::pos(7)));
}

TEST(ReduceCnf, EmptyFormula) {
    auto [x, trace] = reduce_cnf_to_xsat({});
    EXPECT_EQ(x.num_vars, 0U);
    EXPECT_TRUE(x.clauses.empty());
    EXPECT_EQ(trace.before.vars + trace.before.clauses + trace.after.vars + trace.after.clauses, 0U);
}

TEST(ReduceCnf, WrongWidthIsRejected) {
    try {
        reduce_cnf_to_xsat({3, {{1, 2}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::width);
    }
}

// The gadget admits two extensions for (p1,p2,p3) = (1,0,1) and one for each
// other satisfying row, so the counts differ: 7 source models, 8 solutions.
TEST(ReduceCnf, SingleClauseCountsFromOracles) {
    CnfFormula cnf{3, {{1, 2, 3}}};
    auto [x, trace] = reduce_cnf_to_xsat(cnf);
    EXPECT_EQ(naive_count_cnf(cnf), 7U);
    EXPECT_EQ(naive_count(x), 8U);
    EXPECT_FALSE(check_parsimony(7, 8));
}

TEST(ReduceCnf, ExtensionsPerSourceRow) {
    CnfFormula cnf{3, {{1, 2, 3}}};
    XsatFormula x = reduce_cnf_to_xsat(cnf).first;
    std::vector<int> ext(8, 0);
    for (const auto& m : naive_models(x)) ++ext[m.bits[0] | (m.bits[1] << 1) | (m.bits[2] << 2)];
    EXPECT_EQ(ext[0], 0);
    EXPECT_EQ(ext[0b101], 2); // p1 = 1, p2 = 0, p3 = 1
    for (int row : {1, 2, 3, 4, 6, 7}) EXPECT_EQ(ext[row], 1) << row;
}

TEST(ReduceCnf, SizeAccountingOnRandomFormulas) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        CnfFormula cnf = gen_random_cnf(1 + seed % 4, seed % 4, seed);
        auto [x, trace] = reduce_cnf_to_xsat(cnf);
        EXPECT_EQ(x.num_vars, cnf.num_vars + 4 * cnf.clauses.size());
        EXPECT_EQ(x.num_clauses(), 3 * cnf.clauses.size());
    }
}

TEST(CheckParsimony, Examples) {
    EXPECT_TRUE(check_parsimony(7, 7));
    EXPECT_TRUE(check_parsimony(0, 0));
    EXPECT_FALSE(check_parsimony(3, 2));
}

TEST(Positivize, OneNegation) {
    XsatFormula f{3, {Triple(Literal::neg(1), Literal::pos(2), Literal::pos(3))}, false};
    auto [p, trace] = reduce_xsat_to_positive(f);
    EXPECT_TRUE(p.positive);
    EXPECT_EQ(p.num_vars, 4U);
    ASSERT_EQ(p.clauses.size(), 2U);
    EXPECT_EQ(p.clauses[0], positive_triple(4, 2, 3));
    EXPECT_EQ(p.clauses[1], Triple(Literal::pos(4), Literal::pos(1), Literal::bottom()));
}

TEST(Positivize, ThreeNegations) {
    XsatFormula f{3, {Triple(Literal::neg(1), Literal::neg(2), Literal::neg(3))}, false};
    auto [p, trace] = reduce_xsat_to_positive(f);
    EXPECT_EQ(p.num_clauses(), 4U);
    EXPECT_EQ(p.num_vars - f.num_vars, 3U);
    EXPECT_EQ(p.clauses[0], positive_triple(4, 5, 6));
}

TEST(Positivize, IdentityOnPositiveInput) {
    XsatFormula f{6, {positive_triple(1, 2, 3), positive_triple(4, 5, 6), positive_triple(2, 5, 6)}, true};
    auto [p, trace] = reduce_xsat_to_positive(f);
    EXPECT_EQ(p.num_vars, f.num_vars);
    EXPECT_EQ(p.clauses, f.clauses);
    for (const auto& fr : trace.fresh) EXPECT_TRUE(fr.empty());
}

TEST(Positivize, ClauseGrowthAtMostFourfold) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        CnfFormula cnf = gen_random_cnf(4, 1 + seed % 3, seed);
        auto chain = reduce_cnf_chain(cnf);
        EXPECT_LE(chain.positive.num_clauses(), 4 * chain.xsat.num_clauses());
        for (const auto& v : validate(chain.positive)) EXPECT_FALSE(v.is_structural()) << v.str();
    }
}

TEST(Positivize, ParsimoniousOnRandomChains) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        CnfFormula cnf = gen_random_cnf(3, 1 + seed % 2, seed);
        auto chain = reduce_cnf_chain(cnf);
        ASSERT_LE(chain.positive.num_vars, oracle_var_cap);
        EXPECT_EQ(naive_count(chain.xsat), naive_count(chain.positive)) << serialize_cnf(cnf);
    }
}

TEST(Positivize, FreshVariableIsComplementInEveryModel) {
    XsatFormula f{3, {Triple(Literal::neg(1), Literal::pos(2), Literal::pos(3))}, false};
    XsatFormula p = reduce_xsat_to_positive(f).first;
    for (const auto& m : naive_models(p)) EXPECT_NE(m.bits[0], m.bits[3]);
}

// Margin r - k through the chain: the first step raises it by 2|C|, the second keeps it.
TEST(ReductionMargin, ChainMarginIdentity) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CnfFormula cnf = gen_random_cnf(4, 1 + seed % 3, seed);
        auto chain = reduce_cnf_chain(cnf);
        const long long c = static_cast<long long>(cnf.clauses.size());
        const long long margin_src = static_cast<long long>(cnf.num_vars) - c;
        const long long margin_x =
            static_cast<long long>(chain.xsat.num_vars) - static_cast<long long>(chain.xsat.num_clauses());
        EXPECT_EQ(margin_x, margin_src + 2 * c);
        const long long margin_p =
            static_cast<long long>(chain.positive.num_vars) - static_cast<long long>(chain.positive.num_clauses());
        EXPECT_EQ(margin_p, margin_x);
    }
}
