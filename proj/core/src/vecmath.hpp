#pragma once

// Small dense helpers for n <= 16; flat std::vector<double> storage.

#include <cmath>
#include <cstddef>
#include <vector>

namespace helixkit::detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline void axpy(std::vector<double>& y, double alpha, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(std::vector<double>& y, double alpha) {
    for (double& v : y) v *= alpha;
}

// Recursive cofactor expansion; rows is m x m, m small.
inline double det(const std::vector<std::vector<double>>& rows) {
    const std::size_t m = rows.size();
    if (m == 1) return rows[0][0];
    if (m == 2) return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
    double acc = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<std::vector<double>> sub(m - 1, std::vector<double>(m - 1));
        for (std::size_t r = 1; r < m; ++r) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < m; ++k) {
                if (k == c) continue;
                sub[r - 1][cc++] = rows[r][k];
            }
        }
        const double term = rows[0][c] * det(sub);
        acc += (c % 2 == 0) ? term : -term;
    }
    return acc;
}

// In-place modified Gram-Schmidt on the rows, two orthogonalization passes.
inline void orthonormalize_rows(std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < i; ++j) axpy(rows[i], -dot(rows[i], rows[j]), rows[j]);
        scale(rows[i], 1.0 / norm(rows[i]));
    }
}

// Largest |<r_i, r_j> - delta_ij| over all pairs.
inline double orthonormality_drift(const std::vector<std::vector<double>>& rows) {
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i; j < rows.size(); ++j) {
            const double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot(rows[i], rows[j]) - target));
        }
    return worst;
}

// Unit eigenvector of the smallest eigenvalue of a symmetric matrix,
// by the cyclic Jacobi method. Sizes here are tiny (n <= 16).
inline std::vector<double> min_eigenvector(std::vector<std::vector<double>> a) {
    const std::size_t m = a.size();
    std::vector<std::vector<double>> v(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::size_t arg = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (a[i][i] < a[arg][arg]) arg = i;
    std::vector<double> out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = v[k][arg];
    scale(out, 1.0 / norm(out));
    return out;
}

}  // namespace helixkit::detail
