#pragma once

// Randomized cross-check of both solve methods against the oracle, with a
// greedy clause-removal shrinker for the first disagreement.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xsat/bench.hpp"
#include "xsat/generator.hpp"
#include "xsat/kernel.hpp"
#include "xsat/oracle.hpp"

namespace xsat {

struct VerifyConfig {
    std::size_t trials = 200;
    Var r_min = 6;
    Var r_max = 18;
    std::uint64_t seed = 1;
    bool inject_fault = false;
};

struct TrialCounts {
    std::uint64_t oracle = 0;
    mpz_class gauss = 0;
    mpz_class subst = 0;

    bool agree() const { return gauss == subst && gauss == mpz_class(static_cast<unsigned long>(oracle)); }
};

struct Disagreement {
    std::size_t trial = 0;
    std::string spec;
    XsatFormula original;
    XsatFormula minimized;
    TrialCounts counts; // on the minimized formula
};

struct VerifyResult {
    std::size_t trials_run = 0;
    std::optional<Disagreement> disagreement;
};

inline const std::vector<mpq_class>& verify_kappas() {
    static const std::vector<mpq_class> k{mpq_class(1, 3), mpq_class(1, 2), mpq_class(2, 3), mpq_class(1)};
    return k;
}

inline TrialCounts count_three_ways(const XsatFormula& f, bool inject_fault) {
    TrialCounts c;
    c.oracle = naive_count(f);
    SolveOptions opt;
    opt.max_free = 62;
    opt.inject_fault = inject_fault;
    c.gauss = solve(f, Method::gauss, opt).count;
    opt.inject_fault = false;
    c.subst = solve(f, Method::subst, opt).count;
    return c;
}

/// Instance for trial i: r uniform in [r_min, r_max], kappa from the fixed
/// list, both drawn from the derived seed.
inline GenSpec verify_trial_spec(const VerifyConfig& cfg, std::size_t trial) {
    const std::uint64_t s = derive_seed(cfg.seed, trial);
    SplitMix64 rng(s);
    const Var r = cfg.r_min + static_cast<Var>(rng.below(cfg.r_max - cfg.r_min + 1));
    const auto& kap = verify_kappas()[rng.below(verify_kappas().size())];
    return {r, clauses_for(r, kap), s, Family::random};
}

/// Renumbers the variables that occur in some clause to 1..r', dropping the
/// rest, so the result passes the coverage check of the file parser.
inline XsatFormula compact_variables(const XsatFormula& f) {
    std::vector<Var> map(f.num_vars + 1, 0);
    for (const auto& t : f.clauses)
        for (const auto& lit : t.literals())
            if (!lit.is_bottom()) map[lit.var()] = 1;
    Var next = 0;
    for (Var v = 1; v <= f.num_vars; ++v)
        if (map[v]) map[v] = ++next;
    XsatFormula out{next, {}, f.positive};
    auto rename = [&](const Literal& l) {
        if (l.is_bottom()) return l;
        return l.is_negative() ? Literal::neg(map[l.var()]) : Literal::pos(map[l.var()]);
    };
    for (const auto& t : f.clauses) out.clauses.emplace_back(rename(t[0]), rename(t[1]), rename(t[2]));
    return out;
}

/// Greedy delta debugging: drop one clause at a time (compacting unused
/// variables) while the counts still disagree.
inline XsatFormula shrink_disagreement(XsatFormula f, bool inject_fault) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < f.clauses.size(); ++i) {
            XsatFormula g = f;
            g.clauses.erase(g.clauses.begin() + static_cast<std::ptrdiff_t>(i));
            g = compact_variables(g);
            if (!count_three_ways(g, inject_fault).agree()) {
                f = std::move(g);
                progress = true;
                break;
            }
        }
    }
    return f;
}

inline VerifyResult run_verify(const VerifyConfig& cfg) {
    if (cfg.r_min < 3 || cfg.r_max < cfg.r_min || cfg.r_max > oracle_var_cap)
        throw Error(ErrorKind::spec, "verify needs 3 <= r-min <= r-max <= " + std::to_string(oracle_var_cap));
    VerifyResult res;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const GenSpec g = verify_trial_spec(cfg, t);
        XsatFormula f = gen_random(g);
        ++res.trials_run;
        if (count_three_ways(f, cfg.inject_fault).agree()) continue;

        Disagreement d;
        d.trial = t;
        std::ostringstream echo;
        echo << "trial=" << t << " r=" << g.r << " k=" << g.k << " seed=" << g.seed;
        d.spec = echo.str();
        d.original = f;
        d.minimized = shrink_disagreement(f, cfg.inject_fault);
        d.counts = count_three_ways(d.minimized, cfg.inject_fault);
        res.disagreement = std::move(d);
        break;
    }
    return res;
}

} // namespace xsat
