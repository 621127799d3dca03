#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include "sfem/errors.hpp"

namespace sfem {

using Triplet = std::tuple<int, int, double>; // (row, col, value)

/// Compressed sparse row matrix. Column indices are sorted within each row
/// and duplicate coordinates are summed at build time.
struct SparseMatrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<int> row_ptr; // size n_rows + 1
    std::vector<int> col_idx;
    std::vector<double> values;

    static SparseMatrix from_triplets(int n_rows, int n_cols, std::vector<Triplet> triplets) {
        for (const auto& [i, j, v] : triplets)
            if (i < 0 || i >= n_rows || j < 0 || j >= n_cols)
                throw AssemblyError("triplet index out of range");
        std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b));
        });
        SparseMatrix m;
        m.n_rows = n_rows;
        m.n_cols = n_cols;
        m.row_ptr.assign(n_rows + 1, 0);
        for (size_t k = 0; k < triplets.size();) {
            const auto [i, j, v0] = triplets[k];
            double v = v0;
            size_t k2 = k + 1;
            while (k2 < triplets.size() && std::get<0>(triplets[k2]) == i &&
                   std::get<1>(triplets[k2]) == j) {
                v += std::get<2>(triplets[k2]);
                ++k2;
            }
            if (!std::isfinite(v)) throw AssemblyError("non-finite matrix entry");
            m.col_idx.push_back(j);
            m.values.push_back(v);
            m.row_ptr[i + 1]++;
            k = k2;
        }
        for (int i = 0; i < n_rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
        return m;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(n_rows, 0.0);
        for (int i = 0; i < n_rows; ++i)
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) y[i] += values[k] * x[col_idx[k]];
        return y;
    }

    /// Submatrix of rows [r0, r1) and columns [c0, c1), reindexed from zero.
    SparseMatrix block(int r0, int r1, int c0, int c1) const {
        SparseMatrix m;
        m.n_rows = r1 - r0;
        m.n_cols = c1 - c0;
        m.row_ptr.assign(m.n_rows + 1, 0);
        for (int i = r0; i < r1; ++i) {
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                const int j = col_idx[k];
                if (j >= c0 && j < c1) {
                    m.col_idx.push_back(j - c0);
                    m.values.push_back(values[k]);
                    m.row_ptr[i - r0 + 1]++;
                }
            }
        }
        for (int i = 0; i < m.n_rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

} // namespace sfem
