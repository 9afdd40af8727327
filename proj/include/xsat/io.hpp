#pragma once

// Text formats.
//
//   DIMACS CNF   c comment / p cnf <vars> <clauses> / clauses of exactly 3
//                signed literals terminated by 0 (may span lines)
//   XSAT         c comment / p xsat <r> <k> or p xsat+ <r> <k> / one clause per
//                line: three tokens (v, -v or B for the constant false) then 0
//   report       one line of key=value fields in a fixed order

#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "xsat/error.hpp"
#include "xsat/formula.hpp"
#include "xsat/report.hpp"

namespace xsat {

enum class InputFormat { cnf, xsat, xsat_positive };

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::istringstream ss(raw);
        Line line{number, {}};
        for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
        if (line.tokens.empty() || line.tokens.front() == "c") continue;
        lines.push_back(std::move(line));
    }
    return lines;
}

inline long long parse_int(const std::string& tok, std::size_t line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse, "expected integer, got '" + tok + "'", line);
    }
    if (pos != tok.size()) throw Error(ErrorKind::parse, "expected integer, got '" + tok + "'", line);
    return v;
}

inline long long parse_count(const std::string& tok, std::size_t line, const char* what) {
    long long v = parse_int(tok, line);
    if (v < 0 || v > 0x7fffffffLL) throw Error(ErrorKind::parse, std::string("bad ") + what + " '" + tok + "'", line);
    return v;
}

} // namespace detail

inline CnfFormula parse_dimacs_cnf(std::istream& in) {
    auto lines = detail::tokenize_lines(in);
    if (lines.empty()) throw Error(ErrorKind::parse, "missing 'p cnf' header");
    const auto& head = lines.front();
    if (head.tokens.size() != 4 || head.tokens[0] != "p" || head.tokens[1] != "cnf")
        throw Error(ErrorKind::parse, "malformed header, expected 'p cnf <vars> <clauses>'", head.number);

    CnfFormula f;
    f.num_vars = static_cast<Var>(detail::parse_count(head.tokens[2], head.number, "variable count"));
    const auto expected = static_cast<std::size_t>(detail::parse_count(head.tokens[3], head.number, "clause count"));

    std::vector<int> current;
    std::size_t clause_line = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        if (line.tokens.front() == "p") throw Error(ErrorKind::parse, "duplicate header", line.number);
        for (const auto& tok : line.tokens) {
            long long lit = detail::parse_int(tok, line.number);
            if (current.empty()) clause_line = line.number;
            if (lit == 0) {
                if (current.size() != 3)
                    throw Error(ErrorKind::parse, "clause width " + std::to_string(current.size()) + ", expected 3",
                                line.number);
                f.clauses.push_back(current);
                current.clear();
                continue;
            }
            long long idx = lit < 0 ? -lit : lit;
            if (idx > static_cast<long long>(f.num_vars))
                throw Error(ErrorKind::parse,
                            "index " + std::to_string(idx) + " > " + std::to_string(f.num_vars), line.number);
            current.push_back(static_cast<int>(lit));
        }
    }
    if (!current.empty()) throw Error(ErrorKind::parse, "unterminated clause", clause_line);
    if (f.clauses.size() != expected)
        throw Error(ErrorKind::parse, "header declares " + std::to_string(expected) + " clauses, found " +
                                          std::to_string(f.clauses.size()),
                    head.number);
    return f;
}

inline CnfFormula parse_dimacs_cnf(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dimacs_cnf(in);
}

inline XsatFormula parse_xsat(std::istream& in) {
    auto lines = detail::tokenize_lines(in);
    if (lines.empty()) throw Error(ErrorKind::parse, "missing 'p xsat' header");
    const auto& head = lines.front();
    if (head.tokens.size() != 4 || head.tokens[0] != "p" || (head.tokens[1] != "xsat" && head.tokens[1] != "xsat+"))
        throw Error(ErrorKind::parse, "malformed header, expected 'p xsat|xsat+ <r> <k>'", head.number);

    XsatFormula f;
    f.positive = head.tokens[1] == "xsat+";
    f.num_vars = static_cast<Var>(detail::parse_count(head.tokens[2], head.number, "variable count"));
    const auto expected = static_cast<std::size_t>(detail::parse_count(head.tokens[3], head.number, "clause count"));

    std::vector<std::size_t> clause_lines;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        if (line.tokens.front() == "p") throw Error(ErrorKind::parse, "duplicate header", line.number);
        if (line.tokens.size() != 4 || line.tokens[3] != "0")
            throw Error(ErrorKind::parse, "clause must be three literals followed by 0", line.number);
        std::vector<Literal> lits;
        for (std::size_t t = 0; t < 3; ++t) {
            const auto& tok = line.tokens[t];
            if (tok == "B") {
                lits.push_back(Literal::bottom());
                continue;
            }
            long long v = detail::parse_int(tok, line.number);
            if (v == 0) throw Error(ErrorKind::parse, "literal 0 inside clause", line.number);
            if (v < 0 && f.positive) throw Error(ErrorKind::parse, "negation in positive format", line.number);
            long long idx = v < 0 ? -v : v;
            if (idx > static_cast<long long>(f.num_vars))
                throw Error(ErrorKind::parse,
                            "index " + std::to_string(idx) + " > " + std::to_string(f.num_vars), line.number);
            lits.push_back(v < 0 ? Literal::neg(static_cast<Var>(idx)) : Literal::pos(static_cast<Var>(idx)));
        }
        f.clauses.emplace_back(lits[0], lits[1], lits[2]);
        clause_lines.push_back(line.number);
    }
    if (f.clauses.size() != expected)
        throw Error(ErrorKind::parse, "header declares " + std::to_string(expected) + " clauses, found " +
                                          std::to_string(f.clauses.size()),
                    head.number);
    auto violations = validate(f);
    if (!violations.empty()) {
        const auto& v = violations.front();
        std::size_t line = v.clause != Violation::no_clause ? clause_lines[v.clause] : head.number;
        throw Error(ErrorKind::parse, v.str(), line);
    }
    return f;
}

inline XsatFormula parse_xsat(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_xsat(in);
}

/// Reads the first non-comment line to pick a parser.
inline InputFormat detect_format(std::string_view text) {
    std::istringstream in{std::string(text)};
    auto lines = detail::tokenize_lines(in);
    if (!lines.empty() && lines.front().tokens.size() >= 2 && lines.front().tokens[0] == "p") {
        const auto& tag = lines.front().tokens[1];
        if (tag == "cnf") return InputFormat::cnf;
        if (tag == "xsat") return InputFormat::xsat;
        if (tag == "xsat+") return InputFormat::xsat_positive;
    }
    throw Error(ErrorKind::parse, "unrecognized header (expected p cnf, p xsat or p xsat+)",
                lines.empty() ? 0 : lines.front().number);
}

inline std::string serialize_xsat(const XsatFormula& f) {
    std::ostringstream out;
    out << "p " << (f.positive ? "xsat+" : "xsat") << ' ' << f.num_vars << ' ' << f.num_clauses() << '\n';
    for (const auto& t : f.clauses) {
        for (const auto& lit : t.literals()) {
            if (lit.is_bottom())
                out << "B ";
            else
                out << (lit.is_negative() ? "-" : "") << lit.var() << ' ';
        }
        out << "0\n";
    }
    return out.str();
}

inline std::string serialize_cnf(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (int lit : c) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

inline std::string format_bits(double bits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", bits);
    return buf;
}

inline std::string emit_report(const SolveReport& rep) {
    std::ostringstream out;
    out << "sat=" << (rep.sat ? "true" : "false") << " count=" << rep.count.get_str() << " rank=" << rep.rank
        << " nullity=" << rep.nullity << " kernel_vars=" << rep.kernel_vars
        << " kernel_clauses=" << rep.kernel_clauses << " repr_size_bits=" << format_bits(rep.repr_size_bits)
        << " method=" << to_string(rep.method) << " elapsed_ms=" << rep.elapsed_ms;
    return out.str();
}

} // namespace xsat
