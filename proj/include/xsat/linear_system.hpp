#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "xsat/error.hpp"
#include "xsat/formula.hpp"

namespace xsat {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Dense augmented matrix [A | b] over the rationals. The last column is the
/// right-hand side; var_of_col maps the remaining columns to variables.
class LinearSystem {
public:
    LinearSystem() = default;
    LinearSystem(std::size_t rows, std::size_t vars)
        : rows_(rows), cols_(vars + 1), entries_(rows * (vars + 1)), var_of_col_(vars) {
        std::iota(var_of_col_.begin(), var_of_col_.end(), Var{1});
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t vars() const noexcept { return cols_ == 0 ? 0 : cols_ - 1; }
    std::size_t rhs_col() const noexcept { return cols_ - 1; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    Var var_of_col(std::size_t c) const { return var_of_col_.at(c); }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    /// Keeps the first n rows.
    void truncate_rows(std::size_t n) {
        rows_ = std::min(rows_, n);
        entries_.resize(rows_ * cols_);
    }

    friend bool operator==(const LinearSystem&, const LinearSystem&) = default;

    std::string str() const {
        std::string s;
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                if (c + 1 == cols_) s += "| ";
                s += (*this)(r, c).get_str() + ' ';
            }
            s += '\n';
        }
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 1;
    std::vector<Rational> entries_;
    std::vector<Var> var_of_col_;
};

struct RrefResult {
    std::vector<std::size_t> pivot_cols; // pivot_cols[i] is the pivot of matrix row i
    std::vector<std::size_t> free_cols;
    std::size_t rank = 0;
    std::size_t nullity = 0;
    LinearSystem matrix; // reduced rows only; zero and inconsistent rows dropped
    bool inconsistent = false;
};

/// One row x + y + z = 1 per clause; bottom contributes nothing.
inline LinearSystem encode_sys(const XsatFormula& f) {
    LinearSystem sys(f.num_clauses(), f.num_vars);
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        for (const auto& lit : f.clauses[i].literals()) {
            if (lit.is_bottom()) continue;
            if (lit.is_negative())
                throw Error(ErrorKind::encoding, "negative literal " + lit.str() + " in clause " +
                                                     std::to_string(i + 1) + "; reduce to positive first");
            if (lit.var() > f.num_vars)
                throw Error(ErrorKind::encoding, "variable " + lit.str() + " out of range");
            sys(i, lit.var() - 1) += 1;
        }
        sys(i, sys.rhs_col()) = 1;
    }
    return sys;
}

/// Gauss-Jordan elimination. Pivot: leftmost column with a nonzero entry at or
/// below the current row, the smallest such row index.
inline RrefResult gauss_jordan(LinearSystem m) {
    RrefResult res;
    const std::size_t rows = m.rows();
    const std::size_t vars = m.vars();
    const std::size_t rhs = m.rhs_col();

    std::size_t lead = 0;
    Rational factor;
    for (std::size_t col = 0; col < vars; ++col) {
        std::size_t p = lead;
        while (p < rows && sgn(m(p, col)) == 0) ++p;
        if (p == rows) {
            res.free_cols.push_back(col);
            continue;
        }
        m.swap_rows(p, lead);

        if (m(lead, col) != 1) {
            const Rational inv = 1 / m(lead, col);
            for (std::size_t c = col; c <= rhs; ++c)
                if (sgn(m(lead, c)) != 0) m(lead, c) *= inv;
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || sgn(m(r, col)) == 0) continue;
            factor = m(r, col);
            for (std::size_t c = col; c <= rhs; ++c)
                if (sgn(m(lead, c)) != 0) m(r, c) -= factor * m(lead, c);
        }
        res.pivot_cols.push_back(col);
        ++lead;
    }
    for (std::size_t r = lead; r < rows; ++r)
        if (sgn(m(r, rhs)) != 0) res.inconsistent = true;

    m.truncate_rows(lead);
    res.rank = lead;
    res.nullity = vars - lead;
    res.matrix = std::move(m);
    return res;
}

struct RankNullity {
    std::size_t rank = 0;
    std::size_t nullity = 0;
    friend bool operator==(const RankNullity&, const RankNullity&) = default;
};

inline RankNullity rank_of(const XsatFormula& f) {
    auto rref = gauss_jordan(encode_sys(f));
    return {rref.rank, rref.nullity};
}

} // namespace xsat
