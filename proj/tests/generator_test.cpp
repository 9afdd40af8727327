#include <gtest/gtest.h>

#include "xsat/generator.hpp"
#include "xsat/io.hpp"
#include "xsat/oracle.hpp"

using namespace xsat;

TEST(SplitMix64, KnownSequence) {
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
}

TEST(SplitMix64, BelowStaysInRange) {
    SplitMix64 rng(99);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7U);
    EXPECT_THROW(rng.below(0), Error);
}

TEST(GenRandom, Deterministic) {
    GenSpec spec{12, 6, 42, Family::random};
    EXPECT_EQ(serialize_xsat(gen_random(spec)), serialize_xsat(gen_random(spec)));
    GenSpec other = spec;
    other.seed = 43;
    EXPECT_NE(serialize_xsat(gen_random(spec)), serialize_xsat(gen_random(other)));
}

TEST(GenRandom, SixVariablesTwoClausesIsAPartition) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        XsatFormula f = gen_random({6, 2, seed, Family::random});
        ASSERT_EQ(f.clauses.size(), 2U);
        std::set<Var> seen;
        for (const auto& c : f.clauses)
            for (const auto& l : c.literals()) seen.insert(l.var());
        EXPECT_EQ(seen.size(), 6U);
        EXPECT_EQ(naive_count(f), 9U);
    }
}

TEST(GenRandom, SixVariablesFourClauses) {
    XsatFormula f = gen_random({6, 4, 42, Family::random});
    EXPECT_EQ(f.clauses.size(), 4U);
    EXPECT_TRUE(is_valid(f));
}

TEST(GenRandom, TooFewClausesIsSpecError) {
    try {
        gen_random({9, 2, 1, Family::random});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::spec);
    }
}

TEST(GenRandom, AllOutputsValid) {
    for (Var r = 6; r <= 18; ++r)
        for (std::size_t k = (r + 2) / 3; k <= r; ++k) {
            XsatFormula f = gen_random({r, k, r * 100 + k, Family::random});
            EXPECT_TRUE(is_valid(f)) << "r=" << r << " k=" << k;
            EXPECT_EQ(f.clauses.size(), k);
        }
}

TEST(GenPartition, Examples) {
    XsatFormula f = gen_partition(3);
    ASSERT_EQ(f.clauses.size(), 1U);
    EXPECT_EQ(f.clauses[0], positive_triple(1, 2, 3));
    EXPECT_EQ(naive_count(gen_partition(6)), 9U);
    EXPECT_EQ(naive_count(gen_partition(12)), 81U);
    EXPECT_THROW(gen_partition(7), Error);
}

TEST(GenFibChain, Shape) {
    XsatFormula f = gen_fib_chain(4);
    EXPECT_EQ(f.num_vars, 7U);
    EXPECT_EQ(f.clauses.size(), 4U);
    EXPECT_TRUE(is_valid(f));
    EXPECT_THROW(gen_fib_chain(1), Error);
}

TEST(GenFibChain, AllValid) {
    for (std::size_t k = 2; k <= 12; ++k) EXPECT_TRUE(is_valid(gen_fib_chain(k))) << k;
}

TEST(GenFixedRank, RankAndWidth) {
    for (std::size_t d = 4; d <= 10; ++d) {
        XsatFormula f = gen_fixed_rank(6, d, d);
        EXPECT_EQ(f.num_vars, 6 + d);
        EXPECT_EQ(rank_of(f).rank, 6U);
        EXPECT_TRUE(is_valid(f));
    }
}

TEST(GenRandomCnf, Deterministic) {
    CnfFormula a = gen_random_cnf(4, 3, 5), b = gen_random_cnf(4, 3, 5);
    EXPECT_EQ(a.clauses, b.clauses);
    for (const auto& c : a.clauses) {
        ASSERT_EQ(c.size(), 3U);
        for (int lit : c) EXPECT_TRUE(lit != 0 && std::abs(lit) <= 4);
    }
}
