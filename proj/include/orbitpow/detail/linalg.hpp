#ifndef ORBITPOW_DETAIL_LINALG_HPP
#define ORBITPOW_DETAIL_LINALG_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "orbitpow/exactnum.hpp"

namespace orbitpow::detail {

// Fraction-free Bareiss determinant of an integer matrix (destroys m).
inline Int bareiss_det(std::vector<std::vector<Int>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Int(1);
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return Int(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

// Exact solve of a square rational system (Gauss with partial pivot by
// magnitude is unnecessary over Q; any nonzero pivot works). Returns false
// if the matrix is singular. a is destroyed, rhs becomes the solution.
inline bool gauss_solve(std::vector<std::vector<Rat>>& a, std::vector<Rat>& rhs) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return false;
        std::swap(a[piv], a[k]);
        std::swap(rhs[piv], rhs[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rat factor = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= factor * a[k][j];
            rhs[i] -= factor * rhs[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = k + 1; j < n; ++j) rhs[k] -= a[k][j] * rhs[j];
        rhs[k] /= a[k][k];
    }
    return true;
}

}  // namespace orbitpow::detail

#endif
