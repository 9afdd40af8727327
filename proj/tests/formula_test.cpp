#include <gtest/gtest.h>

#include "xsat/formula.hpp"

using namespace xsat;

namespace {

XsatFormula two_clause() { return {4, {positive_triple(1, 2, 3), positive_triple(2, 3, 4)}, true}; }

XsatFormula worked() {
    return {6,
            {positive_triple(1, 2, 3), positive_triple(4, 5, 6), positive_triple(2, 5, 6), positive_triple(1, 2, 5)},
            true};
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
    for (const auto& v : vs)
        if (v.kind == k) return true;
    return false;
}

} // namespace

TEST(Literal, ZeroIndexIsRejected) {
    EXPECT_THROW(Literal::pos(0), Error);
    EXPECT_THROW(Literal::neg(0), Error);
}

TEST(Literal, BottomNeverHolds) {
    EXPECT_FALSE(Literal::bottom().holds(true));
    EXPECT_FALSE(Literal::bottom().holds(false));
    EXPECT_TRUE(Literal::neg(2).holds(false));
    EXPECT_TRUE(Literal::pos(1).complements(Literal::neg(1)));
    EXPECT_FALSE(Literal::pos(1).complements(Literal::pos(1)));
}

TEST(Triple, CanonicalOrderIgnoresInputOrder) {
    EXPECT_EQ(positive_triple(3, 1, 2), positive_triple(1, 2, 3));
    Triple t(Literal::neg(2), Literal::pos(1), Literal::neg(3));
    EXPECT_EQ(t.negation_count(), 2U);
    EXPECT_FALSE(t.has_repeat());
    EXPECT_TRUE(Triple(Literal::pos(1), Literal::neg(1), Literal::pos(2)).has_complementary_pair());
}

TEST(EvalXsat, SatisfyingAssignmentOfTwoClauseExample) { EXPECT_TRUE(eval_xsat(two_clause(), {0, 1, 0, 0})); }

TEST(EvalXsat, ZeroTrueLiteralsFails) {
    XsatFormula f{3, {positive_triple(1, 2, 3)}, true};
    EXPECT_FALSE(eval_xsat(f, {0, 0, 0}));
}

TEST(EvalXsat, TwoTrueLiteralsFails) {
    XsatFormula f{3, {positive_triple(1, 2, 3)}, true};
    EXPECT_FALSE(eval_xsat(f, {1, 1, 0}));
}

TEST(EvalXsat, LengthMismatchIsDimensionError) {
    try {
        eval_xsat(two_clause(), {1, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::dimension);
    }
}

TEST(EvalXsat, BottomAndNegation) {
    XsatFormula f{2, {Triple(Literal::neg(1), Literal::pos(2), Literal::bottom())}, false};
    EXPECT_TRUE(eval_xsat(f, {1, 1}));
    EXPECT_TRUE(eval_xsat(f, {0, 0}));
    EXPECT_FALSE(eval_xsat(f, {0, 1}));
}

TEST(Kappa, Ratios) {
    EXPECT_EQ(kappa({6, {positive_triple(1, 2, 3), positive_triple(4, 5, 6)}, true}), mpq_class(1, 3));
    EXPECT_EQ(kappa(worked()), mpq_class(2, 3));
    EXPECT_EQ(kappa({3, {positive_triple(1, 2, 3)}, true}), mpq_class(1, 3));
}

TEST(Kappa, EmptyFormulaThrows) {
    try {
        kappa({0, {}, true});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::empty_formula);
    }
}

TEST(Validate, WorkedExampleIsClean) { EXPECT_TRUE(validate(worked()).empty()); }

TEST(Validate, DuplicateClause) {
    XsatFormula f{3, {positive_triple(1, 2, 3), positive_triple(1, 2, 3)}, true};
    EXPECT_TRUE(has_kind(validate(f), ViolationKind::duplicate_clause));
}

TEST(Validate, DensityBelowOneThird) {
    XsatFormula f{9, {positive_triple(1, 2, 3), positive_triple(4, 5, 6)}, true};
    auto vs = validate(f);
    EXPECT_TRUE(has_kind(vs, ViolationKind::density_below_one_third));
    EXPECT_TRUE(has_kind(vs, ViolationKind::uncovered_variable));
}

TEST(Validate, StructuralViolations) {
    XsatFormula neg{3, {Triple(Literal::neg(1), Literal::pos(2), Literal::pos(3))}, true};
    EXPECT_TRUE(has_kind(validate(neg), ViolationKind::negation_in_positive));
    XsatFormula range{2, {positive_triple(1, 2, 3)}, true};
    EXPECT_TRUE(has_kind(validate(range), ViolationKind::variable_out_of_range));
    XsatFormula rep{2, {Triple(Literal::pos(1), Literal::pos(1), Literal::pos(2))}, true};
    EXPECT_TRUE(has_kind(validate(rep), ViolationKind::repeated_literal));
}

TEST(RequireAlgebraicInput, NegationIsEncodingError) {
    XsatFormula f{3, {Triple(Literal::neg(1), Literal::pos(2), Literal::pos(3))}, false};
    try {
        require_algebraic_input(f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::encoding);
    }
}

TEST(RequireAlgebraicInput, UncoveredVariablesAreTolerated) {
    XsatFormula f{5, {positive_triple(1, 2, 3)}, true};
    EXPECT_NO_THROW(require_algebraic_input(f));
}

TEST(ExactlyOneSemantics, MatchesIndicatorSumOnAllAssignments) {
    const Triple t(Literal::neg(1), Literal::pos(2), Literal::bottom());
    XsatFormula f{2, {t}, false};
    for (int m = 0; m < 4; ++m) {
        Assignment a{m & 1, (m >> 1) & 1};
        EXPECT_EQ(eval_xsat(f, a), true_literal_count(t, a) == 1);
    }
}
