// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef CMSURF_LATTICE_HPP
#define CMSURF_LATTICE_HPP

#include "cmsurf/integer.hpp"

#include <vector>

namespace cmsurf {

using IntVector = std::vector<Int>;
using IntMatrix = std::vector<IntVector>; // row-major

inline Int dot(const IntVector& u, const IntVector& v)
{
    Int s = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
        s += u[i] * v[i];
    return s;
}

inline IntVector mat_vec(const IntMatrix& m, const IntVector& v)
{
    IntVector out;
    out.reserve(m.size());
    for (const auto& row : m)
        out.push_back(dot(row, v));
    return out;
}

/// u^T m v.
inline Int bilinear(const IntMatrix& m, const IntVector& u, const IntVector& v) { return dot(u, mat_vec(m, v)); }

/// Row Hermite normal form of a full-row-rank integer matrix: pivots positive,
/// entries above each pivot reduced into [0, pivot), zero rows dropped.
inline IntMatrix hermite_normal_form(IntMatrix rows)
{
    if (rows.empty())
        return rows;
    std::size_t ncols = rows.front().size();
    std::size_t top = 0;
    for (std::size_t col = 0; col < ncols && top < rows.size(); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t i = top; i < rows.size(); ++i) {
            if (rows[i][col] == 0)
                continue;
            if (piv == rows.size()) {
                piv = i;
                continue;
            }
            auto& a = rows[piv];
            auto& b = rows[i];
            auto [g, u, v] = xgcd(a[col], b[col]);
            Int ca = a[col] / g, cb = b[col] / g;
            for (std::size_t k = 0; k < ncols; ++k) {
                Int na = u * a[k] + v * b[k];
                Int nb = cb * a[k] - ca * b[k];
                a[k] = na;
                b[k] = nb;
            }
        }
        if (piv == rows.size())
            continue;
        std::swap(rows[top], rows[piv]);
        if (rows[top][col] < 0)
            for (auto& x : rows[top])
                x = -x;
        for (std::size_t i = 0; i < top; ++i) {
            Int k = floor_div(rows[i][col], rows[top][col]);
            if (k != 0)
                for (std::size_t j = 0; j < ncols; ++j)
                    rows[i][j] -= k * rows[top][j];
        }
        ++top;
    }
    rows.resize(top);
    return rows;
}

/// Basis (as rows, in Hermite form) of {v in Z^n : A v = 0}. Column operations
/// are unimodular, so the result is saturated.
inline IntMatrix integer_kernel(const IntMatrix& A, std::size_t n)
{
    IntMatrix a = A;
    // U holds the accumulated column operations, stored by column: U[j] is column j
    IntMatrix U(n, IntVector(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        U[j][j] = 1;
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.size() && c < n; ++i) {
        std::size_t piv = n;
        for (std::size_t k = c; k < n; ++k) {
            if (a[i][k] == 0)
                continue;
            if (piv == n) {
                piv = k;
                continue;
            }
            auto [g, u, v] = xgcd(a[i][piv], a[i][k]);
            Int x = a[i][piv] / g, y = a[i][k] / g;
            for (std::size_t r = 0; r < a.size(); ++r) {
                Int nj = u * a[r][piv] + v * a[r][k];
                Int nk = -y * a[r][piv] + x * a[r][k];
                a[r][piv] = nj;
                a[r][k] = nk;
            }
            for (std::size_t r = 0; r < n; ++r) {
                Int nj = u * U[piv][r] + v * U[k][r];
                Int nk = -y * U[piv][r] + x * U[k][r];
                U[piv][r] = nj;
                U[k][r] = nk;
            }
        }
        if (piv == n)
            continue;
        if (piv != c) {
            for (auto& row : a)
                std::swap(row[piv], row[c]);
            std::swap(U[piv], U[c]);
        }
        ++c;
    }
    IntMatrix kernel(U.begin() + static_cast<std::ptrdiff_t>(c), U.end());
    return hermite_normal_form(kernel);
}

} // namespace cmsurf

#endif // CMSURF_LATTICE_HPP
