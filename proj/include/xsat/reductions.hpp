#pragma once

// 3-CNF -> XSAT (three exactly-one clauses per disjunction, four fresh
// variables) and XSAT -> positive XSAT (one fresh complement variable per
// negated literal, tied to its source by an exactly-one clause with bottom).

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "xsat/error.hpp"
#include "xsat/formula.hpp"

namespace xsat {

struct FormulaSize {
    std::size_t vars = 0;
    std::size_t clauses = 0;
    friend bool operator==(const FormulaSize&, const FormulaSize&) = default;
};

struct ReductionTrace {
    /// fresh[i] lists the indices allocated for source clause i, in
    /// allocation order. Empty when the clause was copied through.
    std::vector<std::vector<Var>> fresh;
    FormulaSize before;
    FormulaSize after;
};

inline Literal cnf_literal(int lit) {
    return lit < 0 ? Literal::neg(static_cast<Var>(-lit)) : Literal::pos(static_cast<Var>(lit));
}

inline Literal negate(const Literal& l) {
    if (l.is_bottom()) throw Error(ErrorKind::contract, "bottom has no negation here");
    return l.is_negative() ? Literal::pos(l.var()) : Literal::neg(l.var());
}

inline std::pair<XsatFormula, ReductionTrace> reduce_cnf_to_xsat(const CnfFormula& f) {
    XsatFormula out;
    out.positive = false;
    ReductionTrace trace;
    trace.before = {f.num_vars, f.clauses.size()};

    Var next = f.num_vars;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const auto& c = f.clauses[i];
        if (c.size() != 3)
            throw Error(ErrorKind::width, "clause " + std::to_string(i + 1) + " has width " + std::to_string(c.size()));
        const Var a = ++next, b = ++next, cc = ++next, d = ++next;
        trace.fresh.push_back({a, b, cc, d});
        const Literal p = cnf_literal(c[0]), p1 = cnf_literal(c[1]), p2 = cnf_literal(c[2]);
        out.clauses.emplace_back(negate(p), Literal::pos(a), Literal::pos(b));
        out.clauses.emplace_back(p1, Literal::pos(b), Literal::pos(cc));
        out.clauses.emplace_back(negate(p2), Literal::pos(cc), Literal::pos(d));
    }
    out.num_vars = next;
    trace.after = {out.num_vars, out.clauses.size()};
    return {std::move(out), std::move(trace)};
}

inline std::pair<XsatFormula, ReductionTrace> reduce_xsat_to_positive(const XsatFormula& f) {
    for (const auto& v : validate(f))
        if (v.is_structural() && v.kind != ViolationKind::negation_in_positive)
            throw Error(ErrorKind::contract, "invalid formula: " + v.str());

    XsatFormula out;
    out.positive = true;
    ReductionTrace trace;
    trace.before = {f.num_vars, f.clauses.size()};

    Var next = f.num_vars;
    const Literal bottom = Literal::bottom();
    for (const auto& t : f.clauses) {
        std::vector<Literal> negated, others;
        for (const auto& lit : t.literals()) (lit.is_negative() ? negated : others).push_back(lit);

        std::vector<Var> fresh;
        for (std::size_t n = 0; n < negated.size(); ++n) fresh.push_back(++next);
        trace.fresh.push_back(fresh);

        switch (negated.size()) {
        case 0:
            out.clauses.push_back(t);
            break;
        case 1:
            out.clauses.emplace_back(Literal::pos(fresh[0]), others[0], others[1]);
            break;
        case 2:
            out.clauses.emplace_back(Literal::pos(fresh[0]), Literal::pos(fresh[1]), others[0]);
            break;
        default:
            out.clauses.emplace_back(Literal::pos(fresh[0]), Literal::pos(fresh[1]), Literal::pos(fresh[2]));
            break;
        }
        // Each fresh variable is forced to the complement of its source.
        for (std::size_t n = 0; n < negated.size(); ++n)
            out.clauses.emplace_back(Literal::pos(fresh[n]), Literal::pos(negated[n].var()), bottom);
    }
    out.num_vars = next;
    trace.after = {out.num_vars, out.clauses.size()};
    return {std::move(out), std::move(trace)};
}

/// Both stages in sequence, as applied to CNF input by the command line.
struct ChainResult {
    XsatFormula xsat;
    XsatFormula positive;
    ReductionTrace first;
    ReductionTrace second;
};

inline ChainResult reduce_cnf_chain(const CnfFormula& f) {
    auto [x, t1] = reduce_cnf_to_xsat(f);
    auto [p, t2] = reduce_xsat_to_positive(x);
    return {std::move(x), std::move(p), std::move(t1), std::move(t2)};
}

inline bool check_parsimony(const mpz_class& source_count, const mpz_class& target_count) {
    return source_count == target_count;
}

} // namespace xsat
