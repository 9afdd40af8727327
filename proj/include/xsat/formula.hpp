#pragma once

// Core vocabulary: literals, exactly-one triples, XSAT and 3-CNF formulas,
// assignments and density statistics.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "xsat/error.hpp"

namespace xsat {

using Var = std::uint32_t;

class Literal {
public:
    // Declaration order is the canonical sort order inside a triple.
    enum class Kind : std::uint8_t { positive, negative, bottom };

    static Literal pos(Var v) { return Literal(Kind::positive, checked(v)); }
    static Literal neg(Var v) { return Literal(Kind::negative, checked(v)); }
    static Literal bottom() { return Literal(Kind::bottom, 0); }

    Kind kind() const noexcept { return kind_; }
    /// 1-based variable index; 0 for bottom.
    Var var() const noexcept { return var_; }
    bool is_bottom() const noexcept { return kind_ == Kind::bottom; }
    bool is_negative() const noexcept { return kind_ == Kind::negative; }

    /// Truth value under a 0/1 value of the underlying variable. Bottom is
    /// constantly false and ignores `value`.
    bool holds(bool value) const noexcept {
        switch (kind_) {
        case Kind::positive: return value;
        case Kind::negative: return !value;
        case Kind::bottom: return false;
        }
        return false;
    }

    bool complements(const Literal& other) const noexcept {
        return !is_bottom() && !other.is_bottom() && var_ == other.var_ && kind_ != other.kind_;
    }

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal& a, const Literal& b) {
        return std::tie(a.kind_, a.var_) <=> std::tie(b.kind_, b.var_);
    }

    std::string str() const {
        switch (kind_) {
        case Kind::positive: return "p" + std::to_string(var_);
        case Kind::negative: return "-p" + std::to_string(var_);
        case Kind::bottom: return "B";
        }
        return "?";
    }

private:
    Literal(Kind kind, Var v) : kind_(kind), var_(v) {}

    static Var checked(Var v) {
        if (v == 0) throw Error(ErrorKind::contract, "variable index must be >= 1");
        return v;
    }

    Kind kind_;
    Var var_;
};

/// Three literals, stored in canonical (kind, index) order so that clause
/// identity is the unordered literal set. Structural rules (no repeats, no
/// complementary pair) are checked by validate(), not here.
class Triple {
public:
    Triple(Literal a, Literal b, Literal c) : lits_{a, b, c} { std::sort(lits_.begin(), lits_.end()); }

    const std::array<Literal, 3>& literals() const noexcept { return lits_; }
    const Literal& operator[](std::size_t i) const { return lits_.at(i); }

    bool has_repeat() const noexcept { return lits_[0] == lits_[1] || lits_[1] == lits_[2]; }
    bool has_complementary_pair() const noexcept {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                if (lits_[i].complements(lits_[j])) return true;
        return false;
    }
    std::size_t negation_count() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(lits_.begin(), lits_.end(), [](const Literal& l) { return l.is_negative(); }));
    }

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;

    std::string str() const {
        return "{" + lits_[0].str() + "," + lits_[1].str() + "," + lits_[2].str() + "}";
    }

private:
    std::array<Literal, 3> lits_;
};

inline Triple positive_triple(Var a, Var b, Var c) {
    return Triple(Literal::pos(a), Literal::pos(b), Literal::pos(c));
}

struct XsatFormula {
    Var num_vars = 0;
    std::vector<Triple> clauses;
    bool positive = true;

    std::size_t num_clauses() const noexcept { return clauses.size(); }
    friend bool operator==(const XsatFormula&, const XsatFormula&) = default;
};

/// 3-CNF instance. Literals are DIMACS-style signed indices; width is
/// enforced by the parser and re-checked by the reduction.
struct CnfFormula {
    Var num_vars = 0;
    std::vector<std::vector<int>> clauses;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

struct Assignment {
    std::vector<std::uint8_t> bits;

    Assignment() = default;
    explicit Assignment(std::size_t n) : bits(n, 0) {}
    Assignment(std::initializer_list<int> values) {
        bits.reserve(values.size());
        for (int v : values) bits.push_back(v != 0 ? 1 : 0);
    }

    std::size_t size() const noexcept { return bits.size(); }
    bool value(Var v) const { return bits.at(v - 1) != 0; }

    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend auto operator<=>(const Assignment&, const Assignment&) = default;

    std::string str() const {
        std::string s;
        for (auto b : bits) s.push_back(b ? '1' : '0');
        return s;
    }
};

inline std::size_t true_literal_count(const Triple& t, const Assignment& a) {
    std::size_t n = 0;
    for (const auto& lit : t.literals())
        if (!lit.is_bottom() && lit.holds(a.value(lit.var()))) ++n;
    return n;
}

inline bool eval_xsat(const XsatFormula& f, const Assignment& a) {
    if (a.size() != f.num_vars)
        throw Error(ErrorKind::dimension, "assignment has " + std::to_string(a.size()) +
                                              " bits, formula has " + std::to_string(f.num_vars) +
                                              " variables");
    for (const auto& t : f.clauses)
        if (true_literal_count(t, a) != 1) return false;
    return true;
}

/// Clause density k/r.
inline mpq_class kappa(const XsatFormula& f) {
    if (f.num_vars == 0) throw Error(ErrorKind::empty_formula, "density of a formula with no variables");
    mpq_class q(static_cast<unsigned long>(f.num_clauses()), static_cast<unsigned long>(f.num_vars));
    q.canonicalize();
    return q;
}

enum class ViolationKind {
    variable_out_of_range,
    repeated_literal,
    complementary_literals,
    negation_in_positive,
    duplicate_clause,
    uncovered_variable,
    density_below_one_third,
};

inline const char* to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::variable_out_of_range: return "variable-out-of-range";
    case ViolationKind::repeated_literal: return "repeated-literal";
    case ViolationKind::complementary_literals: return "complementary-literals";
    case ViolationKind::negation_in_positive: return "negation-in-positive";
    case ViolationKind::duplicate_clause: return "duplicate-clause";
    case ViolationKind::uncovered_variable: return "uncovered-variable";
    case ViolationKind::density_below_one_third: return "density-below-one-third";
    }
    return "unknown";
}

struct Violation {
    static constexpr std::size_t no_clause = static_cast<std::size_t>(-1);

    ViolationKind kind;
    std::size_t clause = no_clause; // 0-based clause position
    Var var = 0;

    /// Coverage and density violations describe the variable set as a whole;
    /// the algebraic pipeline can still process such formulas.
    bool is_structural() const noexcept {
        return kind != ViolationKind::uncovered_variable && kind != ViolationKind::density_below_one_third;
    }

    std::string str() const {
        std::string s = to_string(kind);
        if (clause != no_clause) s += " at clause " + std::to_string(clause + 1);
        if (var != 0) s += " (p" + std::to_string(var) + ")";
        return s;
    }
};

inline std::vector<Violation> validate(const XsatFormula& f) {
    std::vector<Violation> out;
    std::vector<bool> covered(f.num_vars + 1, false);
    std::set<Triple> seen;

    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const Triple& t = f.clauses[i];
        for (const auto& lit : t.literals()) {
            if (lit.is_bottom()) continue;
            if (lit.var() > f.num_vars)
                out.push_back({ViolationKind::variable_out_of_range, i, lit.var()});
            else
                covered[lit.var()] = true;
            if (f.positive && lit.is_negative())
                out.push_back({ViolationKind::negation_in_positive, i, lit.var()});
        }
        if (t.has_repeat()) out.push_back({ViolationKind::repeated_literal, i, 0});
        if (t.has_complementary_pair()) out.push_back({ViolationKind::complementary_literals, i, 0});
        if (!seen.insert(t).second) out.push_back({ViolationKind::duplicate_clause, i, 0});
    }
    for (Var v = 1; v <= f.num_vars; ++v)
        if (!covered[v]) out.push_back({ViolationKind::uncovered_variable, Violation::no_clause, v});
    // k >= ceil(r/3)  <=>  3k >= r
    if (f.positive && 3 * f.num_clauses() < f.num_vars)
        out.push_back({ViolationKind::density_below_one_third, Violation::no_clause, 0});
    return out;
}

inline bool is_valid(const XsatFormula& f) { return validate(f).empty(); }

/// Throws unless the formula is positive and free of structural violations.
/// Uncovered variables are tolerated; they are free columns of the system.
inline void require_algebraic_input(const XsatFormula& f) {
    for (const auto& t : f.clauses)
        for (const auto& lit : t.literals())
            if (lit.is_negative())
                throw Error(ErrorKind::encoding,
                            "negative literal " + lit.str() + " in " + t.str() + "; reduce to positive first");
    for (const auto& v : validate(f))
        if (v.is_structural()) throw Error(ErrorKind::contract, "invalid formula: " + v.str());
}

} // namespace xsat
