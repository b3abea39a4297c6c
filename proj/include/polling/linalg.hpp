#pragma once

#include <cmath>
#include <vector>

#include "polling/error.hpp"

namespace polling {

// Dense Gaussian elimination with partial pivoting. Systems here are tiny
// (at most n(n+1) unknowns with n <= 64), so no factorization reuse.
inline std::vector<double> solve_linear(std::vector<double> a /* row-major m x m */,
                                        std::vector<double> b) {
    const int m = static_cast<int>(b.size());
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(a[r * m + col]) > std::abs(a[pivot * m + col])) pivot = r;
        }
        if (std::abs(a[pivot * m + col]) < 1e-300)
            fail_numerical("singular linear system");
        if (pivot != col) {
            for (int c = col; c < m; ++c) std::swap(a[pivot * m + c], a[col * m + c]);
            std::swap(b[pivot], b[col]);
        }
        double inv = 1.0 / a[col * m + col];
        for (int r = col + 1; r < m; ++r) {
            double f = a[r * m + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(m, 0.0);
    for (int r = m - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < m; ++c) s -= a[r * m + c] * x[c];
        x[r] = s / a[r * m + r];
    }
    return x;
}

}  // namespace polling
