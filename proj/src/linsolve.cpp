#include "regfm/linsolve.hpp"

namespace regfm {

LinSolveResult solve_linear(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    std::size_t m = A.size();
    std::size_t n = m ? A[0].size() : 0;
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && A[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(A[sel], A[row]);
        std::swap(b[sel], b[row]);
        Rational inv = Rational(1) / A[row][col];
        for (std::size_t j = col; j < n; ++j) A[row][j] *= inv;
        b[row] *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || A[r][col] == 0) continue;
            Rational f = A[r][col];
            for (std::size_t j = col; j < n; ++j) A[r][j] -= f * A[row][j];
            b[r] -= f * b[row];
        }
        pivot_col.push_back((int)col);
        ++row;
    }
    for (std::size_t r = row; r < m; ++r)
        if (b[r] != 0) return {LinSolveStatus::Inconsistent, {}};
    if (pivot_col.size() < n) return {LinSolveStatus::NonUnique, {}};
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = b[r];
    return {LinSolveStatus::Unique, x};
}

}  // namespace regfm
