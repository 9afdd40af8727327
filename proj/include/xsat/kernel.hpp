#pragma once

// The 0-1 equality-programming kernel left after elimination, and its
// exhaustive counter.
//
// A pivot row j reads  pivot_j = R_j - sum_i s(i) * x_ji  over the free
// variables s; a free assignment is admissible when every pivot value lands in
// {0, 1}. Filter rows (duplicate left-hand sides from substitution) must hold
// with equality: sum_i s(i) * y_i = t.
//
// Counting walks {0,1}^d in Gray-code order, so each step flips one free
// variable and touches only the rows where that variable has a nonzero
// coefficient. Rows are scaled to integers first; when every scaled magnitude
// fits comfortably in 64 bits the walk runs on int64, otherwise on mpz.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "xsat/error.hpp"
#include "xsat/formula.hpp"
#include "xsat/linear_system.hpp"
#include "xsat/report.hpp"
#include "xsat/substitution.hpp"

namespace xsat {

struct KernelRow {
    std::vector<Rational> coeffs; // one per free variable
    Rational rhs;
    Var pivot = 0;
    friend bool operator==(const KernelRow&, const KernelRow&) = default;
};

struct KernelFilter {
    std::vector<Rational> coeffs;
    Rational rhs;
    friend bool operator==(const KernelFilter&, const KernelFilter&) = default;
};

struct KernelInstance {
    std::vector<Var> free_vars; // ascending
    std::vector<KernelRow> rows;
    std::vector<KernelFilter> filters;
    Var origin_vars = 0;

    std::size_t width() const noexcept { return free_vars.size(); }
    std::size_t num_constraints() const noexcept { return rows.size() + filters.size(); }
    friend bool operator==(const KernelInstance&, const KernelInstance&) = default;
};

inline KernelInstance extract_kernel(const RrefResult& rref) {
    if (rref.inconsistent) throw Error(ErrorKind::contract, "cannot extract a kernel from an inconsistent system");
    const auto& m = rref.matrix;
    KernelInstance k;
    k.origin_vars = static_cast<Var>(m.vars());
    for (auto c : rref.free_cols) k.free_vars.push_back(m.var_of_col(c));
    for (std::size_t r = 0; r < rref.pivot_cols.size(); ++r) {
        KernelRow row;
        row.pivot = m.var_of_col(rref.pivot_cols[r]);
        row.rhs = m(r, m.rhs_col());
        for (auto c : rref.free_cols) row.coeffs.push_back(m(r, c));
        k.rows.push_back(std::move(row));
    }
    return k;
}

/// Kernel shape of a substitution fixpoint: the first constraint for each
/// left-hand variable is its pivot row; later ones become filters.
inline KernelInstance kernel_from_substitution(const SubstitutionState& s) {
    if (!is_fixpoint(s)) throw Error(ErrorKind::contract, "kernel_from_substitution requires a fixpoint");
    KernelInstance k;
    k.origin_vars = s.num_vars;
    k.free_vars.assign(s.dependent.begin(), s.dependent.end());
    std::map<Var, std::size_t> col;
    for (std::size_t i = 0; i < k.free_vars.size(); ++i) col[k.free_vars[i]] = i;

    std::map<Var, const LinearConstraint*> first;
    for (const auto& c : s.constraints) {
        auto [it, fresh] = first.emplace(c.lhs, &c);
        if (fresh) {
            KernelRow row;
            row.pivot = c.lhs;
            row.rhs = Rational(c.constant);
            row.coeffs.assign(k.free_vars.size(), Rational(0));
            for (const auto& [v, a] : c.coeffs) row.coeffs[col.at(v)] = Rational(-a);
            k.rows.push_back(std::move(row));
        } else {
            // c.const + c.body = base.const + base.body
            const LinearConstraint& base = *it->second;
            KernelFilter f;
            f.rhs = Rational(base.constant - c.constant);
            f.coeffs.assign(k.free_vars.size(), Rational(0));
            for (const auto& [v, a] : c.coeffs) f.coeffs[col.at(v)] += Rational(a);
            for (const auto& [v, a] : base.coeffs) f.coeffs[col.at(v)] -= Rational(a);
            k.filters.push_back(std::move(f));
        }
    }
    return k;
}

struct CountOptions {
    std::size_t max_free = 30;
    std::size_t witness_cap = 0; // 0: do not collect
    unsigned jobs = 1;
};

struct KernelCount {
    mpz_class count = 0;
    std::vector<Assignment> witnesses; // sorted; empty unless count <= cap
    bool witnesses_truncated = false;
};

namespace detail {

template <class Int>
struct ScaledKernel {
    // Residual of row j starts at rhs[j] and must end in {0, upper[j]}.
    std::vector<Int> rhs;
    std::vector<Int> upper;
    std::vector<Int> scale; // upper for pivot rows, 1 for filters
    // Column-major nonzeros: for free variable i, (row, scaled coefficient).
    std::vector<std::vector<std::pair<std::size_t, Int>>> columns;
};

inline mpz_class lcm_of_denominators(const std::vector<Rational>& coeffs, const Rational& rhs) {
    mpz_class l = rhs.get_den();
    for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    return l;
}

struct ScaledRowsMpz {
    ScaledKernel<mpz_class> k;
    bool fits_int64 = true;
};

inline ScaledRowsMpz scale_rows(const KernelInstance& kern) {
    ScaledRowsMpz out;
    auto& k = out.k;
    const std::size_t d = kern.width();
    k.columns.assign(d, {});
    const mpz_class limit = mpz_class(1) << 61;

    auto add_row = [&](const std::vector<Rational>& coeffs, const Rational& rhs, bool pivot) {
        const std::size_t j = k.rhs.size();
        mpz_class l = lcm_of_denominators(coeffs, rhs);
        mpz_class b = rhs.get_num() * (l / rhs.get_den());
        mpz_class mass = abs(b) + l;
        for (std::size_t i = 0; i < d; ++i) {
            if (sgn(coeffs[i]) == 0) continue;
            mpz_class a = coeffs[i].get_num() * (l / coeffs[i].get_den());
            mass += abs(a);
            k.columns[i].emplace_back(j, a);
        }
        if (mass >= limit) out.fits_int64 = false;
        k.rhs.push_back(b);
        k.upper.push_back(pivot ? l : mpz_class(0));
        k.scale.push_back(pivot ? l : mpz_class(1));
    };
    for (const auto& r : kern.rows) add_row(r.coeffs, r.rhs, true);
    for (const auto& f : kern.filters) add_row(f.coeffs, f.rhs, false);
    return out;
}

inline ScaledKernel<std::int64_t> narrow(const ScaledKernel<mpz_class>& k) {
    ScaledKernel<std::int64_t> out;
    auto cv = [](const mpz_class& z) { return static_cast<std::int64_t>(z.get_si()); };
    for (const auto& v : k.rhs) out.rhs.push_back(cv(v));
    for (const auto& v : k.upper) out.upper.push_back(cv(v));
    for (const auto& v : k.scale) out.scale.push_back(cv(v));
    out.columns.resize(k.columns.size());
    for (std::size_t i = 0; i < k.columns.size(); ++i)
        for (const auto& [j, a] : k.columns[i]) out.columns[i].emplace_back(j, cv(a));
    return out;
}

template <class Int>
inline bool row_ok(const Int& residual, const Int& upper) {
    return residual == 0 || residual == upper;
}

template <class Int>
inline std::uint8_t to_bit(const Int& residual, const Int& scale) {
    return residual == 0 ? 0 : (residual == scale ? 1 : 0xff);
}

struct ChunkResult {
    std::uint64_t count = 0;
    std::vector<Assignment> witnesses;
};

/// Enumerates every s whose high (d - low_bits) bits equal `prefix`.
template <class Int>
ChunkResult enumerate_chunk(const ScaledKernel<Int>& k, const KernelInstance& kern, std::size_t low_bits,
                            std::uint64_t prefix, std::size_t witness_cap) {
    const std::size_t d = kern.width();
    const std::size_t rows = k.rhs.size();
    const std::size_t pivot_rows = kern.rows.size();
    std::vector<Int> res(k.rhs);
    std::uint64_t mask = prefix << low_bits;
    for (std::size_t i = low_bits; i < d; ++i)
        if ((mask >> i) & 1U)
            for (const auto& [j, a] : k.columns[i]) res[j] -= a;

    std::size_t bad = 0;
    for (std::size_t j = 0; j < rows; ++j)
        if (!row_ok(res[j], k.upper[j])) ++bad;

    ChunkResult out;
    auto record = [&]() {
        ++out.count;
        if (witness_cap == 0 || out.witnesses.size() > witness_cap) return;
        Assignment a(kern.origin_vars);
        for (std::size_t i = 0; i < d; ++i) a.bits[kern.free_vars[i] - 1] = (mask >> i) & 1U;
        for (std::size_t j = 0; j < pivot_rows; ++j)
            a.bits[kern.rows[j].pivot - 1] = to_bit(res[j], k.scale[j]);
        out.witnesses.push_back(std::move(a));
    };

    if (bad == 0) record();
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t t = 1; t < steps; ++t) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(t));
        const bool set = ((mask >> bit) & 1U) == 0;
        mask ^= std::uint64_t{1} << bit;
        for (const auto& [j, a] : k.columns[bit]) {
            const bool was_ok = row_ok(res[j], k.upper[j]);
            if (set)
                res[j] -= a;
            else
                res[j] += a;
            const bool now_ok = row_ok(res[j], k.upper[j]);
            if (was_ok != now_ok) {
                if (now_ok)
                    --bad;
                else
                    ++bad;
            }
        }
        if (bad == 0) record();
    }
    return out;
}

template <class Int>
KernelCount count_scaled(const ScaledKernel<Int>& k, const KernelInstance& kern, const CountOptions& opt) {
    const std::size_t d = kern.width();
    unsigned jobs = std::max(1U, opt.jobs);
    std::size_t prefix_bits = 0;
    while (prefix_bits < d && (std::size_t{1} << prefix_bits) < jobs) ++prefix_bits;
    const std::size_t low_bits = d - prefix_bits;
    const std::uint64_t chunks = std::uint64_t{1} << prefix_bits;

    std::vector<ChunkResult> results(chunks);
    if (chunks == 1) {
        results[0] = enumerate_chunk(k, kern, low_bits, 0, opt.witness_cap);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t workers = std::min<std::uint64_t>(jobs, chunks);
        for (std::uint64_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t c = w; c < chunks; c += workers)
                    results[c] = enumerate_chunk(k, kern, low_bits, c, opt.witness_cap);
            });
        }
        for (auto& t : pool) t.join();
    }

    KernelCount out;
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    for (const auto& r : results) out.count += mpz_class(static_cast<unsigned long>(r.count));
    if (opt.witness_cap > 0) {
        if (out.count <= opt.witness_cap) {
            for (auto& r : results)
                for (auto& w : r.witnesses) out.witnesses.push_back(std::move(w));
            std::sort(out.witnesses.begin(), out.witnesses.end());
        } else {
            out.witnesses_truncated = true;
        }
    }
    return out;
}

} // namespace detail

inline KernelCount count_kernel(const KernelInstance& kern, const CountOptions& opt = {}) {
    const std::size_t d = kern.width();
    if (d > opt.max_free || d > 62)
        throw Error(ErrorKind::capacity, "kernel has " + std::to_string(d) + " free variables, cap is " +
                                             std::to_string(std::min<std::size_t>(opt.max_free, 62)) +
                                             "; raise --max-free or use bench mode");
    auto scaled = detail::scale_rows(kern);
    if (scaled.fits_int64) return detail::count_scaled(detail::narrow(scaled.k), kern, opt);
    return detail::count_scaled(scaled.k, kern, opt);
}

/// r * log2(sum of the expansion profile), in bits.
inline double repr_size(const KernelInstance& kern, const std::vector<mpz_class>& profile) {
    if (profile.empty()) return 0.0;
    mpz_class total = 0;
    for (const auto& p : profile) total += p;
    if (sgn(total) <= 0) return 0.0;
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, total.get_mpz_t());
    return static_cast<double>(kern.origin_vars) * (std::log2(mant) + static_cast<double>(exp));
}

inline double repr_bound_low(std::size_t r) {
    return r == 0 ? 0.0 : static_cast<double>(r) * std::log2(2.0 * static_cast<double>(r) / 3.0);
}

inline double repr_bound_high(std::size_t r) {
    return static_cast<double>(r) * static_cast<double>(r) * std::log2(1.62);
}

struct SolveOptions {
    Method method = Method::gauss;
    std::size_t max_free = 30;
    std::size_t witness_cap = 0;
    unsigned jobs = 1;
    /// Test hook: perturbs the first kernel row before counting.
    bool inject_fault = false;
};

struct SolveDetail {
    SolveReport report;
    KernelInstance kernel;
    SubstitutionState substitution; // filled for both methods
};

inline SolveDetail solve_detailed(const XsatFormula& f, const SolveOptions& opt = {}) {
    using clock = std::chrono::steady_clock;
    auto us_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::micro>(clock::now() - t0).count();
    };
    require_algebraic_input(f);

    const auto start = clock::now();
    SolveDetail out;
    SolveReport& rep = out.report;
    rep.method = opt.method;
    bool decided_unsat = false;

    if (opt.method == Method::gauss) {
        auto t0 = clock::now();
        LinearSystem sys = encode_sys(f);
        rep.phases.encode_us = us_since(t0);
        t0 = clock::now();
        RrefResult rref = gauss_jordan(std::move(sys));
        rep.phases.eliminate_us = us_since(t0);
        rep.rank = rref.rank;
        rep.nullity = rref.nullity;
        if (rref.inconsistent)
            decided_unsat = true;
        else
            out.kernel = extract_kernel(rref);
        out.substitution = substitute(f);
    } else {
        auto t0 = clock::now();
        SubstitutionState s0 = make_substitution_state(f);
        rep.phases.encode_us = us_since(t0);
        t0 = clock::now();
        out.substitution = substitute(std::move(s0));
        rep.phases.eliminate_us = us_since(t0);
        const auto rn = rank_of_subst(out.substitution);
        rep.rank = rn.rank;
        rep.nullity = rn.nullity;
        if (out.substitution.inconsistent)
            decided_unsat = true;
        else
            out.kernel = kernel_from_substitution(out.substitution);
    }

    if (!decided_unsat) {
        rep.kernel_vars = out.kernel.width();
        rep.kernel_clauses = out.kernel.num_constraints();
        if (opt.inject_fault && !out.kernel.rows.empty()) out.kernel.rows.front().rhs += 1;
        auto t0 = clock::now();
        KernelCount kc = count_kernel(out.kernel, {opt.max_free, opt.witness_cap, opt.jobs});
        rep.phases.enumerate_us = us_since(t0);
        rep.count = kc.count;
        rep.witnesses = std::move(kc.witnesses);
        rep.witnesses_truncated = kc.witnesses_truncated;
    } else {
        rep.kernel_vars = rep.nullity;
        rep.count = 0;
    }
    rep.sat = sgn(rep.count) > 0;

    KernelInstance shape = out.kernel;
    shape.origin_vars = f.num_vars;
    rep.repr_size_bits = repr_size(shape, expansion_profile(out.substitution));
    rep.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start).count());
    return out;
}

inline SolveReport solve(const XsatFormula& f, Method method, const SolveOptions& base = {}) {
    SolveOptions opt = base;
    opt.method = method;
    return solve_detailed(f, opt).report;
}

/// Text form of a kernel: header `p ipe <d> <rows>`, one pivot row per line as
/// `<coeff_1> ... <coeff_d> = <rhs>`. Filter rows follow as `c eq ...` lines.
inline std::string emit_kernel(const KernelInstance& k) {
    std::ostringstream out;
    out << "p ipe " << k.width() << ' ' << k.rows.size() << '\n';
    auto line = [&](const std::vector<Rational>& coeffs, const Rational& rhs) {
        for (const auto& c : coeffs) out << c.get_str() << ' ';
        out << "= " << rhs.get_str() << '\n';
    };
    for (const auto& r : k.rows) line(r.coeffs, r.rhs);
    for (const auto& f : k.filters) {
        out << "c eq ";
        line(f.coeffs, f.rhs);
    }
    return out.str();
}

} // namespace xsat
