#pragma once

/// @file matrix.hpp
/// Exact rational matrices and right-kernel computation.  Elimination is
/// fraction-free (Bareiss): rows are scaled to integers, pivoting divides
/// by the previous pivot so every intermediate entry stays an integer
/// (a minor of the input).  Kernel vectors are returned scaled to integer
/// entries with content 1 and first nonzero entry positive.

#include <vector>

#include "rational.hpp"

namespace walkguess::exact {

struct ExactMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a; // row-major

    ExactMatrix() = default;
    ExactMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {
        if (r == 0 || c == 0) throw domain_error("matrix dimensions must be positive");
    }
    Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Multiplies m by an integer vector; used by tests and verification.
inline std::vector<Rat> mat_vec(const ExactMatrix& m, const std::vector<Int>& v) {
    if (v.size() != m.cols) throw domain_error("dimension mismatch in mat_vec");
    std::vector<Rat> out(m.rows, Rat(0));
    for (std::size_t i = 0; i < m.rows; ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < m.cols; ++j)
            if (v[j] != 0) s += m.at(i, j) * Rat(v[j]);
        out[i] = s;
    }
    return out;
}

namespace detail {

/// Fraction-free row echelon form of an integer matrix.  On return M is in
/// echelon form, pivots holds the pivot column of each pivot row (in order).
inline void bareiss_echelon(std::vector<std::vector<Int>>& M, std::vector<std::size_t>& pivots) {
    std::size_t rows = M.size();
    if (rows == 0) return;
    std::size_t cols = M[0].size();
    Int prev = 1;
    std::size_t pr = 0; // next pivot row
    for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
        std::size_t sel = pr;
        while (sel < rows && M[sel][pc] == 0) ++sel;
        if (sel == rows) continue;
        if (sel != pr) std::swap(M[sel], M[pr]);
        const Int pivot = M[pr][pc];
        for (std::size_t i = pr + 1; i < rows; ++i) {
            const Int head = M[i][pc];
            // a zero head still rescales the row by pivot/prev; the update
            // is skippable only when that factor is one
            if (head == 0 && pivot == prev) continue;
            for (std::size_t j = pc; j < cols; ++j) {
                Int v = pivot * M[i][j] - head * M[pr][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                M[i][j] = v;
            }
        }
        prev = pivot;
        pivots.push_back(pc);
        ++pr;
    }
}

} // namespace detail

/// Exact basis of the right kernel of m, one vector per free column, in
/// free-column order.  Each vector is canonical: integer entries, content 1,
/// first nonzero entry positive.  Empty list = trivial kernel.
inline std::vector<std::vector<Int>> nullspace(const ExactMatrix& m) {
    // integerize row by row
    std::vector<std::vector<Int>> M(m.rows, std::vector<Int>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i) {
        Int den = 1;
        for (std::size_t j = 0; j < m.cols; ++j) den = lcm(den, m.at(i, j).get_den());
        for (std::size_t j = 0; j < m.cols; ++j) {
            const Rat& q = m.at(i, j);
            M[i][j] = q.get_num() * (den / q.get_den());
        }
    }
    std::vector<std::size_t> pivots;
    detail::bareiss_echelon(M, pivots);

    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t pc : pivots) is_pivot[pc] = true;

    std::vector<std::vector<Int>> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> x(m.cols, Rat(0));
        x[f] = 1;
        for (std::size_t r = pivots.size(); r-- > 0;) {
            std::size_t pc = pivots[r];
            if (pc > f) {
                x[pc] = 0;
                continue;
            }
            Rat s(0);
            for (std::size_t j = pc + 1; j < m.cols; ++j)
                if (x[j] != 0 && M[r][j] != 0) s += Rat(M[r][j]) * x[j];
            x[pc] = -s / Rat(M[r][pc]);
        }
        basis.push_back(canonical_integer_vector(x));
    }
    return basis;
}

} // namespace walkguess::exact
