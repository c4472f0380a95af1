#ifndef PHASERANGE_LATTICE_HPP
#define PHASERANGE_LATTICE_HPP

// Explicit basis for the lattice {Q z : z in Z^N}, Q the orthogonal
// projection onto the hyperplane perpendicular to v.
//
// A unimodular U whose first column is v is assembled as the product
// A_{N-1} ... A_1 of elementary 2x2-block matrices built from the tail gcd
// chain of v. Projecting the remaining N-1 columns of U onto v's orthogonal
// complement gives the basis B = Q U2.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "phaserange/errors.hpp"
#include "phaserange/exactmath.hpp"
#include "phaserange/int_matrix.hpp"
#include "phaserange/plan.hpp"

namespace phaserange {

/// Tail gcd chain: g[N-1] = v[N-1], g[k] = gcd(v[k], g[k+1]).
/// Throws InputError unless g[0] = 1 (v jointly coprime).
inline std::vector<BigInt> gcd_chain(std::span<const BigInt> v) {
    detail::require(!v.empty(), "gcd_chain: empty vector");
    std::vector<BigInt> g(v.size());
    g.back() = v.back();
    for (std::size_t k = v.size() - 1; k-- > 0;) g[k] = gcd(v[k], g[k + 1]);
    detail::require(g.front() == 1, "gcd_chain: entries are not jointly coprime (gcd = " + g.front().str() + ")");
    return g;
}

/// The N x N matrix A_k (k is 0-based, 0 <= k <= N-2): identity except for
/// the block at rows/cols {k, k+1},
///
///     [ v_k/g_k       a_k ]
///     [ g_{k+1}/g_k   b_k ]
///
/// with b_k v_k/g_k - a_k g_{k+1}/g_k = 1, so det A_k = 1.
inline IntMatrix elementary_matrix(std::size_t k, std::span<const BigInt> v, std::span<const BigInt> g) {
    const std::size_t n = v.size();
    detail::require(g.size() == n, "elementary_matrix: v and g differ in length");
    detail::require(n >= 2 && k + 1 < n, "elementary_matrix: index " + std::to_string(k) + " out of range");
    detail::require(g[k] != 0, "elementary_matrix: zero chain entry");
    const BigInt head = v[k] / g[k];
    const BigInt tail = g[k + 1] / g[k];
    BigInt a = 0;
    BigInt b = 1;
    if (head != 1) {
        Bezout e = extended_gcd(head, tail);
        detail::ensure(e.g == 1, "elementary_matrix: v_k/g_k and g_{k+1}/g_k are not coprime");
        b = std::move(e.s);
        a = -e.t;
    }
    IntMatrix m = IntMatrix::identity(n);
    m(k, k) = head;
    m(k, k + 1) = std::move(a);
    m(k + 1, k) = tail;
    m(k + 1, k + 1) = std::move(b);
    detail::ensure(m(k + 1, k + 1) * head - m(k, k + 1) * tail == 1, "elementary_matrix: block determinant != 1");
    return m;
}

/// Unimodular U with first column v, and U2 = U without that column.
struct UnimodularLift {
    IntMatrix u;
    IntMatrix u2;
};

inline UnimodularLift build_lift(const RangingPlan& plan) {
    const std::vector<BigInt>& v = plan.v();
    const std::vector<BigInt> g = gcd_chain(v);
    const std::size_t n = v.size();
    IntMatrix u = elementary_matrix(0, v, g);
    for (std::size_t k = 1; k + 1 < n; ++k) u = elementary_matrix(k, v, g) * u;

    const BigInt det = determinant(u);
    detail::ensure(det == 1 || det == -1, "build_lift: det(U) = " + det.str());
    detail::ensure(u.column(0) == v, "build_lift: first column of U differs from v");
    UnimodularLift lift{u, u.drop_columns(1)};
    return lift;
}

struct LllResult {
    IntMatrix basis;      // reduced columns
    IntMatrix transform;  // unimodular T with basis = input * T
};

/// LLL reduction of the columns of an integer matrix with linearly
/// independent columns. Gram-Schmidt data is kept exact.
inline LllResult lll_reduce(IntMatrix basis, const Rational& delta = Rational(3, 4)) {
    const std::size_t rows = basis.rows();
    const std::size_t n = basis.cols();
    IntMatrix transform = IntMatrix::identity(n);

    std::vector<Rational> norms(n);
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    auto col_dot = [&](std::size_t i, std::size_t j) {
        BigInt s = 0;
        for (std::size_t r = 0; r < rows; ++r) s += basis(r, i) * basis(r, j);
        return s;
    };
    auto gram_schmidt = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rational m = col_dot(i, j);
                for (std::size_t k = 0; k < j; ++k) m -= mu[j][k] * mu[i][k] * norms[k];
                mu[i][j] = m / norms[j];
            }
            Rational len = col_dot(i, i);
            for (std::size_t k = 0; k < i; ++k) len -= mu[i][k] * mu[i][k] * norms[k];
            detail::ensure(len.sign() > 0, "lll_reduce: columns are linearly dependent");
            norms[i] = len;
        }
    };
    auto sub_column = [&](IntMatrix& m, std::size_t target, std::size_t source, const BigInt& q) {
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, target) -= q * m(r, source);
    };
    auto swap_columns = [](IntMatrix& m, std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
    };

    if (n == 0) return {basis, transform};
    gram_schmidt();
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            const BigInt q = floor(mu[k][j] + Rational(1, 2));
            if (q == 0) continue;
            sub_column(basis, k, j, q);
            sub_column(transform, k, j, q);
            for (std::size_t l = 0; l < j; ++l) mu[k][l] -= Rational(q) * mu[j][l];
            mu[k][j] -= Rational(q);
        }
        if (norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
            ++k;
        } else {
            swap_columns(basis, k, k - 1);
            swap_columns(transform, k, k - 1);
            gram_schmidt();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return {basis, transform};
}

/// Basis B = Q U2 of the dual lattice, with its exact integer lift.
///
/// Exact form: B = S / ||v||^2 where S = ||v||^2 U2 - v (v^T U2) is an
/// integer matrix. The doubles in basis() are each rounded once from S.
/// For enumeration an LLL-reduced copy B T (T unimodular) and the upper
/// Cholesky factor of its Gram matrix are precomputed.
class DualBasis {
public:
    std::size_t dimension() const noexcept { return v_.size(); }
    std::size_t rank() const noexcept { return v_.size() - 1; }

    const std::vector<BigInt>& v() const noexcept { return v_; }
    const BigInt& v_norm_sq() const noexcept { return v_norm_sq_; }
    const UnimodularLift& lift() const noexcept { return lift_; }
    const Eigen::MatrixXd& basis() const noexcept { return basis_; }

    /// S, with B = S / v_norm_sq() exactly.
    const IntMatrix& scaled_basis() const noexcept { return scaled_basis_; }
    std::vector<Rational> exact_column(std::size_t j) const {
        std::vector<Rational> col;
        col.reserve(dimension());
        for (std::size_t i = 0; i < dimension(); ++i) col.emplace_back(scaled_basis_(i, j), v_norm_sq_);
        return col;
    }

    /// T with reduced_basis() = basis() * T.
    const IntMatrix& reduction() const noexcept { return reduction_; }
    const Eigen::MatrixXd& reduced_basis() const noexcept { return reduced_basis_; }
    /// Upper-triangular R with R^T R = Gram(reduced_basis()).
    const Eigen::MatrixXd& triangular_factor() const noexcept { return triangular_; }
    const Eigen::MatrixXd& reduced_gram() const noexcept { return reduced_gram_; }

    /// Maps reduced coefficients u to coefficients w = T u of basis(), exactly.
    std::vector<BigInt> to_basis_coordinates(std::span<const long long> reduced) const {
        return reduction_.apply(reduced);
    }

private:
    friend DualBasis build_dual_basis(const RangingPlan& plan);

    std::vector<BigInt> v_;
    BigInt v_norm_sq_;
    UnimodularLift lift_;
    IntMatrix scaled_basis_;
    Eigen::MatrixXd basis_;
    IntMatrix reduction_;
    Eigen::MatrixXd reduced_basis_;
    Eigen::MatrixXd reduced_gram_;
    Eigen::MatrixXd triangular_;
};

namespace detail {

inline Eigen::MatrixXd demote(const IntMatrix& numerators, const BigInt& denominator) {
    Eigen::MatrixXd out(numerators.rows(), numerators.cols());
    for (std::size_t i = 0; i < numerators.rows(); ++i)
        for (std::size_t j = 0; j < numerators.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                Rational(numerators(i, j), denominator).to_double();
    return out;
}

inline constexpr double kRankTolerance = 1e-10;

} // namespace detail

inline DualBasis build_dual_basis(const RangingPlan& plan) {
    DualBasis out;
    out.v_ = plan.v();
    out.v_norm_sq_ = dot(out.v_, out.v_);
    out.lift_ = build_lift(plan);

    const std::size_t n = out.v_.size();
    const IntMatrix& u2 = out.lift_.u2;
    IntMatrix s(n, n - 1);
    for (std::size_t j = 0; j < n - 1; ++j) {
        const BigInt proj = dot(out.v_, u2.column(j));
        for (std::size_t i = 0; i < n; ++i) s(i, j) = out.v_norm_sq_ * u2(i, j) - out.v_[i] * proj;
    }
    for (std::size_t j = 0; j < n - 1; ++j)
        detail::ensure(dot(out.v_, s.column(j)) == 0, "build_dual_basis: column not orthogonal to v");
    out.scaled_basis_ = s;
    out.basis_ = detail::demote(s, out.v_norm_sq_);

    LllResult reduced = lll_reduce(s);
    out.reduction_ = reduced.transform;
    out.reduced_basis_ = detail::demote(reduced.basis, out.v_norm_sq_);

    const IntMatrix gram = reduced.basis.transpose() * reduced.basis;
    out.reduced_gram_ = detail::demote(gram, out.v_norm_sq_ * out.v_norm_sq_);
    Eigen::LLT<Eigen::MatrixXd> llt(out.reduced_gram_);
    detail::ensure(llt.info() == Eigen::Success, "build_dual_basis: Gram matrix is not positive definite");
    out.triangular_ = llt.matrixU();
    const Eigen::VectorXd diag = out.triangular_.diagonal().cwiseAbs();
    detail::ensure(diag.minCoeff() > detail::kRankTolerance * diag.maxCoeff(), "build_dual_basis: basis is rank deficient");
    return out;
}

} // namespace phaserange

#endif
