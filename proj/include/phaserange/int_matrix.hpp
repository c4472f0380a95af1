#ifndef PHASERANGE_INT_MATRIX_HPP
#define PHASERANGE_INT_MATRIX_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "phaserange/exactmath.hpp"

namespace phaserange {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<BigInt> column(std::size_t c) const {
        std::vector<BigInt> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    /// Columns [first, cols()).
    IntMatrix drop_columns(std::size_t first) const {
        IntMatrix out(rows_, cols_ - first);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = first; c < cols_; ++c) out(r, c - first) = (*this)(r, c);
        return out;
    }

    IntMatrix transpose() const {
        IntMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        detail::require(a.cols_ == b.rows_, "IntMatrix: dimension mismatch in product");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const BigInt& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    std::vector<BigInt> apply(std::span<const BigInt> x) const {
        detail::require(x.size() == cols_, "IntMatrix: dimension mismatch in apply");
        std::vector<BigInt> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * x[j];
        return out;
    }

    std::vector<BigInt> apply(std::span<const long long> x) const {
        std::vector<BigInt> wide(x.begin(), x.end());
        return apply(std::span<const BigInt>(wide));
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(IntMatrix m) {
    detail::require(m.rows() == m.cols(), "determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

inline BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b) {
    detail::require(a.size() == b.size(), "dot: length mismatch");
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace phaserange

#endif
