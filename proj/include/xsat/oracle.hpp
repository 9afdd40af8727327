#pragma once

// Ground truth by exhaustive enumeration of all 2^r assignments. No pruning.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "xsat/error.hpp"
#include "xsat/formula.hpp"

namespace xsat {

inline constexpr Var oracle_var_cap = 24;

namespace detail {

inline void require_oracle_size(Var r) {
    if (r > oracle_var_cap)
        throw Error(ErrorKind::capacity,
                    std::to_string(r) + " variables exceed the oracle cap of " + std::to_string(oracle_var_cap));
}

} // namespace detail

/// Gray-code walk: flipping one variable re-evaluates only the clauses that
/// mention it; a running tally tracks how many clauses are exactly-one true.
inline std::uint64_t naive_count(const XsatFormula& f) {
    detail::require_oracle_size(f.num_vars);
    const Var r = f.num_vars;
    const std::size_t k = f.clauses.size();

    struct Occurrence {
        std::size_t clause;
        bool negative;
    };
    std::vector<std::vector<Occurrence>> occ(r + 1);
    for (std::size_t i = 0; i < k; ++i)
        for (const auto& lit : f.clauses[i].literals()) {
            if (lit.is_bottom()) continue;
            if (lit.var() > r) throw Error(ErrorKind::contract, "literal " + lit.str() + " out of range");
            occ[lit.var()].push_back({i, lit.is_negative()});
        }

    Assignment a(r);
    std::vector<int> trues(k, 0);
    std::size_t exact = 0;
    for (std::size_t i = 0; i < k; ++i) {
        trues[i] = static_cast<int>(true_literal_count(f.clauses[i], a));
        if (trues[i] == 1) ++exact;
    }

    std::uint64_t count = exact == k ? 1 : 0;
    const std::uint64_t total = std::uint64_t{1} << r;
    for (std::uint64_t t = 1; t < total; ++t) {
        const Var v = static_cast<Var>(std::countr_zero(t)) + 1;
        const bool now = a.bits[v - 1] == 0;
        a.bits[v - 1] = now ? 1 : 0;
        for (const auto& o : occ[v]) {
            const bool lit_true = o.negative ? !now : now;
            if (trues[o.clause] == 1) --exact;
            trues[o.clause] += lit_true ? 1 : -1;
            if (trues[o.clause] == 1) ++exact;
        }
        if (exact == k) ++count;
    }
    return count;
}

/// Straight double loop over assignments and clauses; cross-checks naive_count.
inline std::uint64_t naive_count_reference(const XsatFormula& f) {
    detail::require_oracle_size(f.num_vars);
    const Var r = f.num_vars;
    std::uint64_t count = 0;
    Assignment a(r);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << r); ++m) {
        for (Var v = 0; v < r; ++v) a.bits[v] = (m >> v) & 1U;
        if (eval_xsat(f, a)) ++count;
    }
    return count;
}

/// Every satisfying assignment, in ascending binary order of (p1..pr).
inline std::vector<Assignment> naive_models(const XsatFormula& f) {
    detail::require_oracle_size(f.num_vars);
    const Var r = f.num_vars;
    std::vector<Assignment> out;
    Assignment a(r);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << r); ++m) {
        for (Var v = 0; v < r; ++v) a.bits[v] = (m >> (r - 1 - v)) & 1U;
        if (eval_xsat(f, a)) out.push_back(a);
    }
    return out;
}

inline std::uint64_t naive_count_cnf(const CnfFormula& f) {
    detail::require_oracle_size(f.num_vars);
    const Var r = f.num_vars;
    std::uint64_t count = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << r); ++m) {
        bool all = true;
        for (const auto& c : f.clauses) {
            bool any = false;
            for (int lit : c) {
                const auto v = static_cast<unsigned>(lit < 0 ? -lit : lit);
                if (v == 0 || v > r) throw Error(ErrorKind::contract, "literal out of range");
                const bool value = (m >> (v - 1)) & 1U;
                if (lit < 0 ? !value : value) {
                    any = true;
                    break;
                }
            }
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) ++count;
    }
    return count;
}

} // namespace xsat
