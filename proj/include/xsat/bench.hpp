#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "xsat/formula.hpp"
#include "xsat/generator.hpp"
#include "xsat/io.hpp"
#include "xsat/kernel.hpp"
#include "xsat/linear_system.hpp"

namespace xsat {

struct BenchRow {
    std::string spec; // reproducible echo: r, k, seed, family, method
    Var r = 0;
    std::size_t k = 0;
    std::size_t rank = 0;
    std::size_t nullity = 0;
    mpq_class kappa;
    std::size_t kernel_width = 0;
    mpz_class count = 0;
    double repr_size_bits = 0;
    double bound_lo = 0;
    double bound_hi = 0;
    PhaseTimes phases;

    bool within_bounds() const { return bound_lo <= repr_size_bits && repr_size_bits <= bound_hi; }
};

inline BenchRow bench_instance(const XsatFormula& f, std::string spec, const SolveOptions& opt) {
    SolveReport rep = solve_detailed(f, opt).report;
    BenchRow row;
    row.spec = std::move(spec);
    row.r = f.num_vars;
    row.k = f.num_clauses();
    row.rank = rep.rank;
    row.nullity = rep.nullity;
    row.kappa = kappa(f);
    row.kernel_width = rep.kernel_vars;
    row.count = rep.count;
    row.repr_size_bits = rep.repr_size_bits;
    row.bound_lo = repr_bound_low(f.num_vars);
    row.bound_hi = repr_bound_high(f.num_vars);
    row.phases = rep.phases;
    return row;
}

inline std::string format_row(const BenchRow& row) {
    std::ostringstream out;
    out << row.spec << " rank=" << row.rank << " nullity=" << row.nullity << " kappa=" << row.kappa.get_str()
        << " kernel_width=" << row.kernel_width << " count=" << row.count.get_str()
        << " repr_size_bits=" << format_bits(row.repr_size_bits) << " bound_lo=" << format_bits(row.bound_lo)
        << " bound_hi=" << format_bits(row.bound_hi) << " bounds_ok=" << (row.within_bounds() ? "true" : "false")
        << " encode_us=" << format_bits(row.phases.encode_us) << " eliminate_us=" << format_bits(row.phases.eliminate_us)
        << " enumerate_us=" << format_bits(row.phases.enumerate_us);
    return out.str();
}

/// Least-squares slope of y on x.
inline double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::contract, "slope needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0) throw Error(ErrorKind::contract, "slope undefined for constant x");
    return sxy / sxx;
}

inline constexpr double slope_band_lo = 0.7;
inline constexpr double slope_band_hi = 1.3;

struct ScalingPoint {
    std::size_t nullity = 0;
    double enumerate_us = 0; // best of the repeats
};

/// Counting time against kernel width at a fixed number of kernel rows.
inline std::vector<ScalingPoint> measure_scaling(std::size_t rank, std::size_t nullity_lo, std::size_t nullity_hi,
                                                 std::uint64_t seed, std::size_t repeats = 3) {
    using clock = std::chrono::steady_clock;
    std::vector<ScalingPoint> out;
    for (std::size_t d = nullity_lo; d <= nullity_hi; ++d) {
        XsatFormula f = gen_fixed_rank(rank, d, derive_seed(seed, d));
        RrefResult rref = gauss_jordan(encode_sys(f));
        KernelInstance kern = extract_kernel(rref);
        double best = 0;
        for (std::size_t rep = 0; rep < std::max<std::size_t>(1, repeats); ++rep) {
            const auto t0 = clock::now();
            auto kc = count_kernel(kern, {64, 0, 1});
            const double us = std::chrono::duration<double, std::micro>(clock::now() - t0).count();
            if (sgn(kc.count) < 0) throw Error(ErrorKind::internal, "negative count");
            best = rep == 0 ? us : std::min(best, us);
        }
        out.push_back({kern.width(), best});
    }
    return out;
}

inline double scaling_slope(const std::vector<ScalingPoint>& pts) {
    std::vector<double> x, y;
    for (const auto& p : pts) {
        x.push_back(static_cast<double>(p.nullity));
        y.push_back(std::log2(std::max(p.enumerate_us, 1e-3)));
    }
    return regression_slope(x, y);
}

struct BenchConfig {
    Var r_lo = 9;
    Var r_hi = 15;
    std::vector<mpq_class> kappas;
    std::size_t per_cell = 3;
    std::uint64_t seed = 1;
    Method method = Method::gauss;
    std::size_t max_free = 30;
    unsigned jobs = 1;
    std::size_t slope_min_nullity = 10;
};

struct BenchCell {
    std::string spec;
    std::optional<BenchRow> row;
    std::string skipped; // reason when row is empty
};

struct BenchSummary {
    std::size_t rows = 0;
    std::size_t skipped = 0;
    std::size_t bound_violations = 0;
    std::optional<double> slope; // absent when too few distinct widths
    bool slope_ok = true;
};

/// k = ceil(kappa * r).
inline std::size_t clauses_for(Var r, const mpq_class& kappa) {
    mpz_class num = kappa.get_num() * r;
    mpz_class k;
    mpz_cdiv_q(k.get_mpz_t(), num.get_mpz_t(), kappa.get_den_mpz_t());
    return static_cast<std::size_t>(k.get_ui());
}

/// Runs every (r, kappa, instance) cell; `sink` receives cells in sweep order
/// from a single thread.
inline BenchSummary run_bench(const BenchConfig& cfg, const std::function<void(const BenchCell&)>& sink) {
    struct Job {
        GenSpec spec;
    };
    std::vector<Job> jobs;
    std::uint64_t index = 0;
    for (Var r = cfg.r_lo; r <= cfg.r_hi; ++r)
        for (const auto& kap : cfg.kappas)
            for (std::size_t i = 0; i < cfg.per_cell; ++i, ++index)
                jobs.push_back({{r, clauses_for(r, kap), derive_seed(cfg.seed, index), Family::random}});

    std::vector<BenchCell> cells(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
            const GenSpec& g = jobs[j].spec;
            BenchCell& cell = cells[j];
            std::ostringstream echo;
            echo << "r=" << g.r << " k=" << g.k << " seed=" << g.seed << " family=" << to_string(g.family)
                 << " method=" << to_string(cfg.method);
            cell.spec = echo.str();
            try {
                XsatFormula f = gen_random(g);
                SolveOptions opt;
                opt.method = cfg.method;
                opt.max_free = cfg.max_free;
                cell.row = bench_instance(f, cell.spec, opt);
            } catch (const Error& e) {
                cell.skipped = e.what();
            }
        }
    };
    const unsigned n = std::max(1U, cfg.jobs);
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BenchSummary sum;
    std::vector<double> x, y;
    std::set<std::size_t> widths;
    for (const auto& cell : cells) {
        sink(cell);
        if (!cell.row) {
            ++sum.skipped;
            continue;
        }
        ++sum.rows;
        if (!cell.row->within_bounds()) ++sum.bound_violations;
        if (cell.row->kernel_width >= cfg.slope_min_nullity && cell.row->phases.enumerate_us > 0) {
            x.push_back(static_cast<double>(cell.row->kernel_width));
            y.push_back(std::log2(cell.row->phases.enumerate_us));
            widths.insert(cell.row->kernel_width);
        }
    }
    if (widths.size() >= 3) {
        sum.slope = regression_slope(x, y);
        sum.slope_ok = *sum.slope >= slope_band_lo && *sum.slope <= slope_band_hi;
    }
    return sum;
}

} // namespace xsat
