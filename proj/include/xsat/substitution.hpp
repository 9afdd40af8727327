#pragma once

// Clause-by-clause substitution. Each clause {n, m, s} with n the lowest
// variable becomes the constraint n = 1 - m - s; constraints are sorted by n,
// and every occurrence of a constraint's left-hand variable inside another
// constraint's body is replaced by that constraint's right-hand side until no
// body mentions a left-hand variable.
//
// Bodies keep two views of the same expansion:
//   coeffs        exact integer coefficients after combining like terms
//   multiplicity  how many terms the textual expansion holds per variable,
//                 never cancelled; this is what the expansion profile counts

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "xsat/error.hpp"
#include "xsat/formula.hpp"

namespace xsat {

struct LinearConstraint {
    Var lhs = 0;
    mpz_class constant = 0;
    std::map<Var, mpz_class> coeffs;
    std::map<Var, mpz_class> multiplicity;
    std::size_t source_clause = 0; // 0-based position in the input formula

    friend bool operator==(const LinearConstraint& a, const LinearConstraint& b) {
        return a.lhs == b.lhs && a.constant == b.constant && a.coeffs == b.coeffs &&
               a.multiplicity == b.multiplicity && a.source_clause == b.source_clause;
    }

    std::string str() const {
        std::string s = "p" + std::to_string(lhs) + " = " + constant.get_str();
        for (const auto& [v, c] : coeffs) {
            s += sgn(c) < 0 ? " - " : " + ";
            mpz_class mag = abs(c);
            if (mag != 1) s += mag.get_str() + "*";
            s += "p" + std::to_string(v);
        }
        return s;
    }
};

struct SubstitutionStats {
    std::size_t sweeps = 0;
    std::size_t substitutions = 0;
};

struct SubstitutionState {
    Var num_vars = 0;
    std::vector<LinearConstraint> constraints; // ascending by lhs, stable
    std::set<Var> independent;                 // left-hand variables
    std::set<Var> dependent;                   // every other variable
    bool inconsistent = false;
    SubstitutionStats stats; // not part of state identity

    friend bool operator==(const SubstitutionState& a, const SubstitutionState& b) {
        return a.num_vars == b.num_vars && a.constraints == b.constraints && a.independent == b.independent &&
               a.dependent == b.dependent && a.inconsistent == b.inconsistent;
    }
};

inline LinearConstraint normalize_clause(const Triple& t, std::size_t source_clause = 0) {
    std::vector<Var> vars;
    for (const auto& lit : t.literals()) {
        if (lit.is_bottom()) continue;
        if (lit.is_negative())
            throw Error(ErrorKind::encoding, "negative literal in " + t.str() + "; reduce to positive first");
        vars.push_back(lit.var());
    }
    if (vars.empty()) throw Error(ErrorKind::degenerate_clause, t.str() + " has no variable to solve for");
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
        throw Error(ErrorKind::contract, t.str() + " repeats a variable");

    LinearConstraint c;
    c.lhs = vars.front();
    c.constant = 1;
    c.source_clause = source_clause;
    for (std::size_t i = 1; i < vars.size(); ++i) {
        c.coeffs[vars[i]] = -1;
        c.multiplicity[vars[i]] = 1;
    }
    return c;
}

namespace detail {

inline void refresh_partition(SubstitutionState& s) {
    s.independent.clear();
    s.dependent.clear();
    for (const auto& c : s.constraints) s.independent.insert(c.lhs);
    for (Var v = 1; v <= s.num_vars; ++v)
        if (!s.independent.count(v)) s.dependent.insert(v);

    // Constraints sharing a left-hand variable must agree; if their bodies
    // coincide exactly, differing constants are a contradiction.
    s.inconsistent = false;
    std::map<Var, const LinearConstraint*> first;
    for (const auto& c : s.constraints) {
        auto [it, fresh] = first.emplace(c.lhs, &c);
        if (!fresh && it->second->coeffs == c.coeffs && it->second->constant != c.constant) s.inconsistent = true;
    }
}

/// Replaces every occurrence of def.lhs in target by def's right-hand side.
inline void substitute_into(LinearConstraint& target, const LinearConstraint& def) {
    const Var v = def.lhs;
    mpz_class coeff = 0;
    if (auto it = target.coeffs.find(v); it != target.coeffs.end()) {
        coeff = it->second;
        target.coeffs.erase(it);
    }
    auto mit = target.multiplicity.find(v);
    const mpz_class mult = mit->second;
    target.multiplicity.erase(mit);

    if (sgn(coeff) != 0) {
        target.constant += coeff * def.constant;
        for (const auto& [w, cw] : def.coeffs) {
            mpz_class& slot = target.coeffs[w];
            slot += coeff * cw;
            if (sgn(slot) == 0) target.coeffs.erase(w);
        }
    }
    for (const auto& [w, mw] : def.multiplicity) target.multiplicity[w] += mult * mw;
}

} // namespace detail

/// Pre-processing: normal forms sorted ascending by left-hand variable.
inline SubstitutionState make_substitution_state(const XsatFormula& f) {
    SubstitutionState s;
    s.num_vars = f.num_vars;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) s.constraints.push_back(normalize_clause(f.clauses[i], i));
    std::stable_sort(s.constraints.begin(), s.constraints.end(),
                     [](const LinearConstraint& a, const LinearConstraint& b) { return a.lhs < b.lhs; });
    detail::refresh_partition(s);
    return s;
}

inline bool is_fixpoint(const SubstitutionState& s) {
    std::set<Var> lhs;
    for (const auto& c : s.constraints) lhs.insert(c.lhs);
    for (const auto& c : s.constraints)
        for (const auto& entry : c.multiplicity)
            if (lhs.count(entry.first)) return false;
    return true;
}

/// Runs sweeps (i descending, j descending) until a sweep changes nothing.
inline SubstitutionState substitute(SubstitutionState s) {
    const std::size_t k = s.constraints.size();
    s.stats = {};
    for (;;) {
        if (s.stats.sweeps > k + 1) throw Error(ErrorKind::internal, "substitution did not reach a fixpoint");
        ++s.stats.sweeps;
        bool changed = false;
        for (std::size_t i = k; i-- > 0;) {
            for (std::size_t j = k; j-- > 0;) {
                if (j == i) continue;
                auto& ci = s.constraints[i];
                const auto& cj = s.constraints[j];
                if (!ci.multiplicity.count(cj.lhs)) continue;
                detail::substitute_into(ci, cj);
                ++s.stats.substitutions;
                changed = true;
            }
        }
        if (!changed) break;
    }
    detail::refresh_partition(s);
    return s;
}

inline SubstitutionState substitute(const XsatFormula& f) { return substitute(make_substitution_state(f)); }

struct SubstRank {
    std::size_t rank = 0;
    std::size_t nullity = 0;
    friend bool operator==(const SubstRank&, const SubstRank&) = default;
};

inline SubstRank rank_of_subst(const SubstitutionState& s) {
    if (!is_fixpoint(s)) throw Error(ErrorKind::contract, "rank_of_subst requires a substitution fixpoint");
    return {s.independent.size(), s.dependent.size()};
}

/// Per-constraint expansion size |n(i)|: body terms counted with multiplicity,
/// in constraint order.
inline std::vector<mpz_class> expansion_profile(const SubstitutionState& s) {
    if (!is_fixpoint(s)) throw Error(ErrorKind::contract, "expansion_profile requires a substitution fixpoint");
    std::vector<mpz_class> out;
    out.reserve(s.constraints.size());
    for (const auto& c : s.constraints) {
        mpz_class total = 0;
        for (const auto& entry : c.multiplicity) total += entry.second;
        out.push_back(total);
    }
    return out;
}

/// Distinct variables with a nonzero coefficient, per constraint.
inline std::vector<std::size_t> support_profile(const SubstitutionState& s) {
    std::vector<std::size_t> out;
    out.reserve(s.constraints.size());
    for (const auto& c : s.constraints) out.push_back(c.coeffs.size());
    return out;
}

} // namespace xsat
