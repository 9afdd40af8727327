#pragma once

// Seeded instance generators. All randomness comes from SplitMix64 with
// explicit modulo-rejection sampling, so output is identical on every
// platform for a given seed.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xsat/error.hpp"
#include "xsat/formula.hpp"
#include "xsat/linear_system.hpp"

namespace xsat {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw Error(ErrorKind::contract, "empty range");
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % n;
        }
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t state_;
};

enum class Family { random, partition, fib_chain };

inline const char* to_string(Family f) {
    switch (f) {
    case Family::random: return "random";
    case Family::partition: return "partition";
    case Family::fib_chain: return "fib-chain";
    }
    return "?";
}

struct GenSpec {
    Var r = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    Family family = Family::random;
};

inline constexpr std::size_t gen_retry_cap = 1'000'000;

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return seed ^ index; }

/// k distinct positive triples covering all r variables, conditioned uniform
/// via rejection. When 3k - r <= r/3 plain rejection almost never covers, so
/// proposals instead place every variable once and fill the 3k - r spare
/// slots at random before shuffling; invalid proposals are still rejected.
inline XsatFormula gen_random(const GenSpec& spec) {
    const Var r = spec.r;
    const std::size_t k = spec.k;
    const std::uint64_t triples = r < 3 ? 0 : std::uint64_t{r} * (r - 1) * (r - 2) / 6;
    if (r < 3 || k == 0) throw Error(ErrorKind::spec, "need r >= 3 and k >= 1");
    if (3 * k < r)
        throw Error(ErrorKind::spec, std::to_string(k) + " triples cannot cover " + std::to_string(r) + " variables");
    if (k > r) throw Error(ErrorKind::spec, "k > r is outside the generated range");
    if (k > triples) throw Error(ErrorKind::spec, "not enough distinct triples");

    SplitMix64 rng(spec.seed);
    const std::size_t slack = 3 * k - r;
    const bool cover_first = 3 * slack <= r;

    for (std::size_t attempt = 0; attempt < gen_retry_cap; ++attempt) {
        std::set<Triple> set;
        bool ok = true;
        if (cover_first) {
            std::vector<Var> slots;
            for (Var v = 1; v <= r; ++v) slots.push_back(v);
            for (std::size_t i = 0; i < slack; ++i) slots.push_back(static_cast<Var>(rng.below(r)) + 1);
            rng.shuffle(slots);
            for (std::size_t c = 0; c < k && ok; ++c) {
                const Var a = slots[3 * c], b = slots[3 * c + 1], d = slots[3 * c + 2];
                ok = a != b && b != d && a != d && set.insert(positive_triple(a, b, d)).second;
            }
        } else {
            while (set.size() < k) {
                Var a = static_cast<Var>(rng.below(r)) + 1;
                Var b = static_cast<Var>(rng.below(r)) + 1;
                Var d = static_cast<Var>(rng.below(r)) + 1;
                if (a == b || b == d || a == d) continue;
                set.insert(positive_triple(a, b, d));
            }
            std::vector<bool> covered(r + 1, false);
            for (const auto& t : set)
                for (const auto& lit : t.literals()) covered[lit.var()] = true;
            ok = std::all_of(covered.begin() + 1, covered.end(), [](bool b) { return b; });
        }
        if (ok) return XsatFormula{r, std::vector<Triple>(set.begin(), set.end()), true};
    }
    throw Error(ErrorKind::spec, "no covering instance found within the retry cap");
}

/// The r/3 disjoint triples {p1,p2,p3}, {p4,p5,p6}, ...
inline XsatFormula gen_partition(Var r) {
    if (r == 0 || r % 3 != 0) throw Error(ErrorKind::spec, "partition family needs r divisible by 3");
    XsatFormula f{r, {}, true};
    for (Var v = 1; v + 2 <= r; v += 3) f.clauses.push_back(positive_triple(v, v + 1, v + 2));
    return f;
}

/// Substitution worst case. Constraint i (lhs x_i) has body {x_{i+1}, x_{i+2}},
/// both left-hand variables of later constraints, so its expansion is the sum
/// of the two following ones: sizes 2, 3, 5, 8, ... from the last constraint
/// back. The last two constraints bottom out on fresh variables z, y1, y2:
///   {x_i, x_{i+1}, x_{i+2}}  i <= k-2
///   {x_{k-1}, x_k, z}
///   {x_k, y1, y2}
/// with x_i = i, z = k+1, y1 = k+2, y2 = k+3.
inline XsatFormula gen_fib_chain(std::size_t k) {
    if (k < 2) throw Error(ErrorKind::spec, "fib chain needs k >= 2");
    const Var kk = static_cast<Var>(k);
    XsatFormula f{kk + 3, {}, true};
    for (Var i = 1; i + 2 <= kk; ++i) f.clauses.push_back(positive_triple(i, i + 1, i + 2));
    f.clauses.push_back(positive_triple(kk - 1, kk, kk + 1));
    f.clauses.push_back(positive_triple(kk, kk + 2, kk + 3));
    return f;
}

inline XsatFormula generate(const GenSpec& spec) {
    switch (spec.family) {
    case Family::random: return gen_random(spec);
    case Family::partition: return gen_partition(spec.r);
    case Family::fib_chain: return gen_fib_chain(spec.k);
    }
    throw Error(ErrorKind::spec, "unknown family");
}

/// Random instance with exactly `rank` clauses, rank `rank` and r = rank +
/// nullity variables. Used by the scaling benchmark, where the number of
/// kernel rows must stay fixed while the kernel widens.
inline XsatFormula gen_fixed_rank(std::size_t rank, std::size_t nullity, std::uint64_t seed) {
    if (nullity > 2 * rank) throw Error(ErrorKind::spec, "nullity above 2*rank cannot be covered");
    const Var r = static_cast<Var>(rank + nullity);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        XsatFormula f = gen_random({r, rank, derive_seed(seed, i), Family::random});
        if (rank_of(f).rank == rank) return f;
    }
    throw Error(ErrorKind::spec, "no full-rank instance found");
}

/// Random 3-CNF; literals may repeat within a clause.
inline CnfFormula gen_random_cnf(Var vars, std::size_t clauses, std::uint64_t seed) {
    if (vars == 0 && clauses > 0) throw Error(ErrorKind::spec, "clauses need at least one variable");
    SplitMix64 rng(seed);
    CnfFormula f{vars, {}};
    for (std::size_t c = 0; c < clauses; ++c) {
        std::vector<int> clause;
        for (int j = 0; j < 3; ++j) {
            int v = static_cast<int>(rng.below(vars)) + 1;
            clause.push_back(rng.below(2) ? -v : v);
        }
        f.clauses.push_back(clause);
    }
    return f;
}

} // namespace xsat
