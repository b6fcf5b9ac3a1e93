#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fatlines/prime_field.hpp"

namespace fatlines {

/// Row-major dense matrix over F_p.
class DenseMatrix {
  public:
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Fp& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Fp at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Fp* row(std::size_t r) { return data_.data() + r * cols_; }
    const Fp* row(std::size_t r) const { return data_.data() + r * cols_; }

    const std::vector<Fp>& data() const { return data_; }
    std::vector<Fp>& data() { return data_; }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Fp{1};
        return m;
    }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Fp> data_;
};

namespace detail {

/// In-place forward elimination with partial pivoting (first nonzero entry);
/// pivot rows are normalized to leading 1. Returns the pivot columns in
/// order, so the rank is the return value's size.
inline std::vector<std::size_t> echelonize(std::vector<Fp>& a, std::size_t rows,
                                           std::size_t cols,
                                           const PrimeField& F) {
    std::vector<std::size_t> pivots;
    const std::uint32_t p = F.p();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && a[pr * cols + c].v == 0) ++pr;
        if (pr == rows) continue;
        if (pr != r) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pr * cols),
                             a.begin() + static_cast<std::ptrdiff_t>((pr + 1) * cols),
                             a.begin() + static_cast<std::ptrdiff_t>(r * cols));
        }
        Fp* prow = &a[r * cols];
        if (prow[c].v != 1) {
            const Fp s = F.inv(prow[c]);
            for (std::size_t k = c; k < cols; ++k) prow[k] = F.mul(prow[k], s);
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            Fp* irow = &a[i * cols];
            const std::uint32_t f = irow[c].v;
            if (f == 0) continue;
            const std::uint64_t g = p - f;  // row_i += g * pivot_row
            irow[c].v = 0;
            for (std::size_t k = c + 1; k < cols; ++k) {
                irow[k].v = F.reduce(irow[k].v + g * prow[k].v);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(const DenseMatrix& m, const PrimeField& F) {
    std::vector<Fp> work = m.data();
    return detail::echelonize(work, m.rows(), m.cols(), F).size();
}

/// cols - rank: the affine dimension of the solution space of M x = 0.
inline std::size_t kernel_dimension(const DenseMatrix& m, const PrimeField& F) {
    return m.cols() - rank(m, F);
}

/// Basis of the nullspace, one vector per free column.
inline std::vector<std::vector<Fp>> kernel_basis(const DenseMatrix& m,
                                                 const PrimeField& F) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<Fp> a = m.data();
    const std::vector<std::size_t> pivots = detail::echelonize(a, rows, cols, F);

    // back-substitute to reduced echelon form
    const std::uint32_t p = F.p();
    for (std::size_t r = pivots.size(); r-- > 0;) {
        const std::size_t c = pivots[r];
        const Fp* prow = &a[r * cols];
        for (std::size_t i = 0; i < r; ++i) {
            Fp* irow = &a[i * cols];
            const std::uint32_t f = irow[c].v;
            if (f == 0) continue;
            const std::uint64_t g = p - f;
            for (std::size_t k = c; k < cols; ++k) {
                irow[k].v = F.reduce(irow[k].v + g * prow[k].v);
            }
        }
    }

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Fp>> basis;
    basis.reserve(cols - pivots.size());
    for (std::size_t j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        std::vector<Fp> v(cols, Fp{0});
        v[j] = Fp{1};
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = F.neg(a[r * cols + j]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// M * v over F_p; dimension-checked.
inline std::vector<Fp> apply(const DenseMatrix& m, const std::vector<Fp>& v,
                             const PrimeField& F) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument("apply: dimension mismatch");
    }
    std::vector<Fp> out(m.rows(), Fp{0});
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t acc = 0;
        const Fp* row = m.row(r);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            acc = F.reduce(acc + static_cast<std::uint64_t>(row[c].v) * v[c].v);
        }
        out[r] = Fp{static_cast<std::uint32_t>(acc)};
    }
    return out;
}

}  // namespace fatlines
