// Command-line front end: solve / count / kernel / reduce / gen / bench / verify.
//
// Exit codes: 10 SAT, 20 UNSAT, 0 success (count-only and other commands),
// 1 input or usage error, 2 capacity, 3 verify disagreement, 4 bench slope
// outside its band.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xsat/xsat.hpp"

namespace {

using namespace xsat;

constexpr int exit_sat = 10;
constexpr int exit_unsat = 20;
constexpr int exit_error = 1;
constexpr int exit_capacity = 2;
constexpr int exit_disagree = 3;
constexpr int exit_slope = 4;

unsigned default_jobs() {
    if (const char* env = std::getenv("XSAT_JOBS")) {
        try {
            return static_cast<unsigned>(std::max(1, std::stoi(env)));
        } catch (const std::exception&) {
        }
    }
    return 1;
}

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

/// Any accepted input, brought to positive XSAT. `source_vars` is the variable
/// count of the file as given; reductions keep those indices in place.
struct Prepared {
    XsatFormula formula;
    Var source_vars = 0;
    std::vector<std::string> notes;
};

Prepared prepare(const std::string& text) {
    Prepared p;
    switch (detect_format(text)) {
    case InputFormat::cnf: {
        CnfFormula cnf = parse_dimacs_cnf(text);
        auto chain = reduce_cnf_chain(cnf);
        p.source_vars = cnf.num_vars;
        p.formula = std::move(chain.positive);
        p.notes.push_back("c reduced cnf " + std::to_string(cnf.num_vars) + "/" + std::to_string(cnf.clauses.size()) +
                          " -> xsat " + std::to_string(chain.xsat.num_vars) + "/" +
                          std::to_string(chain.xsat.num_clauses()) + " -> xsat+ " +
                          std::to_string(p.formula.num_vars) + "/" + std::to_string(p.formula.num_clauses()));
        p.notes.push_back("c counts refer to the reduced xsat+ instance");
        break;
    }
    case InputFormat::xsat: {
        XsatFormula f = parse_xsat(text);
        p.source_vars = f.num_vars;
        p.formula = reduce_xsat_to_positive(f).first;
        if (p.formula.num_vars != f.num_vars)
            p.notes.push_back("c positivized xsat " + std::to_string(f.num_vars) + " -> " +
                              std::to_string(p.formula.num_vars) + " variables");
        break;
    }
    case InputFormat::xsat_positive:
        p.formula = parse_xsat(text);
        p.source_vars = p.formula.num_vars;
        break;
    }
    return p;
}

int exit_for(const Error& e) {
    std::cerr << e.what() << '\n';
    return e.kind() == ErrorKind::capacity ? exit_capacity : exit_error;
}

std::pair<Var, Var> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw Error(ErrorKind::contract, "range must look like A..B");
    const auto lo = static_cast<Var>(std::stoul(s.substr(0, dots)));
    const auto hi = static_cast<Var>(std::stoul(s.substr(dots + 2)));
    if (lo > hi) throw Error(ErrorKind::contract, "empty range " + s);
    return {lo, hi};
}

mpq_class parse_fraction(const std::string& s) {
    if (s.find('.') != std::string::npos) {
        // decimal: exact value of the written digits
        const auto dot = s.find('.');
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        mpz_class den = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        mpq_class q(mpz_class(digits), den);
        q.canonicalize();
        return q;
    }
    mpq_class q(s);
    q.canonicalize();
    return q;
}

struct SolveArgs {
    std::string input;
    std::string method = "gauss";
    bool count_only = false;
    std::size_t witnesses = 0;
    std::size_t max_free = 30;
    unsigned jobs = default_jobs();
};

void add_solve_flags(CLI::App* cmd, SolveArgs& a) {
    cmd->add_option("--input", a.input, "instance file (cnf, xsat or xsat+; '-' for stdin)")->required();
    cmd->add_option("--method", a.method, "gauss|subst")->check(CLI::IsMember({"gauss", "subst"}));
    cmd->add_option("--witnesses", a.witnesses, "print up to N satisfying assignments");
    cmd->add_option("--max-free", a.max_free, "largest kernel width to enumerate");
    cmd->add_option("--jobs", a.jobs, "enumeration threads (default $XSAT_JOBS or 1)");
}

int cmd_solve(const SolveArgs& a) {
    try {
        Prepared p = prepare(read_input(a.input));
        SolveOptions opt;
        opt.method = parse_method(a.method);
        opt.max_free = a.max_free;
        opt.witness_cap = a.witnesses;
        opt.jobs = a.jobs;
        SolveReport rep = solve_detailed(p.formula, opt).report;
        for (const auto& n : p.notes) std::cout << n << '\n';
        std::cout << emit_report(rep) << '\n';
        if (a.witnesses > 0) {
            if (rep.witnesses_truncated)
                std::cout << "c " << rep.count.get_str() << " models exceed --witnesses " << a.witnesses << '\n';
            for (const auto& w : rep.witnesses) std::cout << "v " << w.str().substr(0, p.source_vars) << '\n';
        }
        if (a.count_only) return 0;
        return rep.sat ? exit_sat : exit_unsat;
    } catch (const Error& e) {
        return exit_for(e);
    }
}

int cmd_kernel(const SolveArgs& a) {
    try {
        Prepared p = prepare(read_input(a.input));
        SolveOptions opt;
        opt.method = parse_method(a.method);
        require_algebraic_input(p.formula);
        KernelInstance k;
        if (opt.method == Method::gauss) {
            RrefResult rref = gauss_jordan(encode_sys(p.formula));
            if (rref.inconsistent) {
                std::cout << "c inconsistent over the rationals: no 0/1 solution\n";
                return exit_unsat;
            }
            k = extract_kernel(rref);
        } else {
            SubstitutionState s = substitute(p.formula);
            if (s.inconsistent) {
                std::cout << "c inconsistent substitution: no 0/1 solution\n";
                return exit_unsat;
            }
            k = kernel_from_substitution(s);
        }
        std::cout << "c free";
        for (Var v : k.free_vars) std::cout << " p" << v;
        std::cout << "\nc pivots";
        for (const auto& r : k.rows) std::cout << " p" << r.pivot;
        std::cout << '\n' << emit_kernel(k);
        return 0;
    } catch (const Error& e) {
        return exit_for(e);
    }
}

int cmd_reduce(const std::string& input, const std::string& stage) {
    try {
        const std::string text = read_input(input);
        auto print_trace = [](const char* name, const ReductionTrace& t) {
            std::cout << "c " << name << " vars " << t.before.vars << " -> " << t.after.vars << ", clauses "
                      << t.before.clauses << " -> " << t.after.clauses << '\n';
        };
        XsatFormula out;
        if (detect_format(text) == InputFormat::cnf) {
            auto chain = reduce_cnf_chain(parse_dimacs_cnf(text));
            print_trace("cnf->xsat", chain.first);
            if (stage == "xsat") {
                out = std::move(chain.xsat);
            } else {
                print_trace("xsat->xsat+", chain.second);
                out = std::move(chain.positive);
            }
        } else {
            auto [pos, trace] = reduce_xsat_to_positive(parse_xsat(text));
            print_trace("xsat->xsat+", trace);
            out = std::move(pos);
        }
        for (const auto& v : validate(out))
            std::cout << "c warning: " << v.str() << '\n';
        std::cout << serialize_xsat(out);
        return 0;
    } catch (const Error& e) {
        return exit_for(e);
    }
}

int cmd_gen(const std::string& family, Var r, std::size_t k, std::uint64_t seed, const std::string& out_path) {
    try {
        GenSpec spec{r, k, seed, Family::random};
        if (family == "partition")
            spec.family = Family::partition;
        else if (family == "fib-chain")
            spec.family = Family::fib_chain;
        XsatFormula f = generate(spec);
        std::ostringstream text;
        text << "c gen family=" << family << " r=" << r << " k=" << k << " seed=" << seed << '\n'
             << serialize_xsat(f);
        if (out_path.empty() || out_path == "-") {
            std::cout << text.str();
        } else {
            std::ofstream out(out_path);
            if (!out) throw Error(ErrorKind::parse, "cannot write '" + out_path + "'");
            out << text.str();
        }
        return 0;
    } catch (const Error& e) {
        return exit_for(e);
    }
}

struct BenchArgs {
    std::string r_range = "9..15";
    std::vector<std::string> kappa{"1/3", "1/2", "2/3", "1"};
    std::size_t per_cell = 3;
    std::uint64_t seed = 1;
    std::string out;
    std::string method = "gauss";
    std::size_t max_free = 30;
    unsigned jobs = default_jobs();
    std::string scaling_range;
    std::size_t scaling_rank = 12;
};

int cmd_bench(const BenchArgs& a) {
    try {
        std::ofstream file;
        if (!a.out.empty()) {
            file.open(a.out, std::ios::app);
            if (!file) throw Error(ErrorKind::parse, "cannot open '" + a.out + "'");
        }
        std::ostream& out = a.out.empty() ? std::cout : file;

        if (!a.scaling_range.empty()) {
            auto [lo, hi] = parse_range(a.scaling_range);
            auto pts = measure_scaling(a.scaling_rank, lo, hi, a.seed, 3);
            for (const auto& p : pts)
                out << "scaling rank=" << a.scaling_rank << " nullity=" << p.nullity
                    << " enumerate_us=" << format_bits(p.enumerate_us) << " seed=" << a.seed << '\n';
            const double slope = scaling_slope(pts);
            const bool ok = slope >= slope_band_lo && slope <= slope_band_hi;
            std::cout << "c scaling slope=" << format_bits(slope) << " band=[" << slope_band_lo << ","
                      << slope_band_hi << "] " << (ok ? "ok" : "OUT-OF-BAND") << '\n';
            return ok ? 0 : exit_slope;
        }

        BenchConfig cfg;
        std::tie(cfg.r_lo, cfg.r_hi) = parse_range(a.r_range);
        for (const auto& k : a.kappa) cfg.kappas.push_back(parse_fraction(k));
        cfg.per_cell = a.per_cell;
        cfg.seed = a.seed;
        cfg.method = parse_method(a.method);
        cfg.max_free = a.max_free;
        cfg.jobs = a.jobs;
        BenchSummary sum = run_bench(cfg, [&](const BenchCell& cell) {
            if (cell.row) {
                out << format_row(*cell.row) << '\n';
                if (!cell.row->within_bounds())
                    std::cerr << "c bound violation: " << cell.spec << '\n';
            } else {
                std::cerr << "c skipped " << cell.spec << ": " << cell.skipped << '\n';
            }
        });
        std::cout << "c rows=" << sum.rows << " skipped=" << sum.skipped
                  << " bound_violations=" << sum.bound_violations;
        if (sum.slope)
            std::cout << " slope=" << format_bits(*sum.slope) << (sum.slope_ok ? " ok" : " OUT-OF-BAND");
        else
            std::cout << " slope=n/a";
        std::cout << '\n';
        return sum.slope_ok ? 0 : exit_slope;
    } catch (const Error& e) {
        return exit_for(e);
    }
}

int cmd_verify(const VerifyConfig& cfg, const std::string& repro_path) {
    try {
        if (cfg.trials == 0) std::cerr << "c warning: 0 trials requested, nothing verified\n";
        VerifyResult res = run_verify(cfg);
        if (!res.disagreement) {
            std::cout << "c verified " << res.trials_run << " trials: gauss = subst = oracle\n";
            return 0;
        }
        const auto& d = *res.disagreement;
        std::ofstream out(repro_path);
        out << "c repro " << d.spec << " oracle=" << d.counts.oracle << " gauss=" << d.counts.gauss.get_str()
            << " subst=" << d.counts.subst.get_str() << '\n'
            << serialize_xsat(d.minimized);
        std::cout << "c disagreement at " << d.spec << ": oracle=" << d.counts.oracle
                  << " gauss=" << d.counts.gauss.get_str() << " subst=" << d.counts.subst.get_str()
                  << " (minimized to " << d.minimized.num_clauses() << " clauses)\nc repro written to " << repro_path
                  << '\n';
        return exit_disagree;
    } catch (const Error& e) {
        return exit_for(e);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact one-in-three satisfiability: solve, count and kernelize"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "decide (and optionally count) an instance");
    add_solve_flags(solve_cmd, solve_args);
    solve_cmd->add_flag("--count", solve_args.count_only, "exit 0 after printing the count");

    SolveArgs count_args;
    count_args.count_only = true;
    auto* count_cmd = app.add_subcommand("count", "count models; same as solve --count");
    add_solve_flags(count_cmd, count_args);

    SolveArgs kernel_args;
    auto* kernel_cmd = app.add_subcommand("kernel", "print the 0-1 equality kernel");
    kernel_cmd->add_option("--input", kernel_args.input, "instance file")->required();
    kernel_cmd->add_option("--method", kernel_args.method, "gauss|subst")->check(CLI::IsMember({"gauss", "subst"}));

    std::string reduce_input, reduce_stage = "positive";
    auto* reduce_cmd = app.add_subcommand("reduce", "apply the reduction chain and print XSAT");
    reduce_cmd->add_option("--input", reduce_input, "cnf or xsat file")->required();
    reduce_cmd->add_option("--stage", reduce_stage, "stop after 'xsat' or go to 'positive'")
        ->check(CLI::IsMember({"xsat", "positive"}));

    std::string gen_family = "random", gen_out;
    Var gen_r = 0;
    std::size_t gen_k = 0;
    std::uint64_t gen_seed = 1;
    auto* gen_cmd = app.add_subcommand("gen", "generate an instance in XSAT format");
    gen_cmd->add_option("--family", gen_family, "random|partition|fib-chain")
        ->check(CLI::IsMember({"random", "partition", "fib-chain"}));
    gen_cmd->add_option("--r", gen_r, "variables (random, partition)");
    gen_cmd->add_option("--k", gen_k, "clauses (random, fib-chain)");
    gen_cmd->add_option("--seed", gen_seed, "64-bit seed");
    gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "sweep random ensembles and time each phase");
    bench_cmd->add_option("--r-range", bench_args.r_range, "A..B");
    bench_cmd->add_option("--kappa", bench_args.kappa, "densities, e.g. 1/3 0.5 1")->delimiter(',');
    bench_cmd->add_option("--per-cell", bench_args.per_cell, "instances per (r, kappa)");
    bench_cmd->add_option("--seed", bench_args.seed, "64-bit seed");
    bench_cmd->add_option("--out", bench_args.out, "append rows to FILE (default stdout)");
    bench_cmd->add_option("--method", bench_args.method, "gauss|subst")->check(CLI::IsMember({"gauss", "subst"}));
    bench_cmd->add_option("--max-free", bench_args.max_free, "largest kernel width to enumerate");
    bench_cmd->add_option("--jobs", bench_args.jobs, "concurrent cells (default $XSAT_JOBS or 1)");
    bench_cmd->add_option("--scaling", bench_args.scaling_range,
                          "A..B: time the fixed-rank family over these kernel widths instead");
    bench_cmd->add_option("--scaling-rank", bench_args.scaling_rank, "kernel rows for --scaling");

    VerifyConfig verify_cfg;
    std::string repro_path = "xsat-repro.xsat";
    auto* verify_cmd = app.add_subcommand("verify", "compare gauss, subst and the oracle on random instances");
    verify_cmd->add_option("--trials", verify_cfg.trials, "number of instances");
    verify_cmd->add_option("--r-max", verify_cfg.r_max, "largest variable count");
    verify_cmd->add_option("--r-min", verify_cfg.r_min, "smallest variable count");
    verify_cmd->add_option("--seed", verify_cfg.seed, "64-bit seed");
    verify_cmd->add_option("--repro", repro_path, "where to write a minimized disagreement");
    verify_cmd->add_flag("--inject-fault", verify_cfg.inject_fault, "perturb the gauss kernel (self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_error;
    }

    if (*solve_cmd) return cmd_solve(solve_args);
    if (*count_cmd) return cmd_solve(count_args);
    if (*kernel_cmd) return cmd_kernel(kernel_args);
    if (*reduce_cmd) return cmd_reduce(reduce_input, reduce_stage);
    if (*gen_cmd) return cmd_gen(gen_family, gen_r, gen_k, gen_seed, gen_out);
    if (*bench_cmd) return cmd_bench(bench_args);
    if (*verify_cmd) return cmd_verify(verify_cfg, repro_path);
    return exit_error;
}
