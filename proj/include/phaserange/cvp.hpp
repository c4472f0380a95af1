#ifndef PHASERANGE_CVP_HPP
#define PHASERANGE_CVP_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "phaserange/errors.hpp"
#include "phaserange/lattice.hpp"

namespace phaserange {

struct CvpSolution {
    std::vector<BigInt> w;   // coefficients with respect to DualBasis::basis()
    std::vector<double> x;   // B w
    double dist_sq = 0.0;    // ||target - x||^2
};

/// ||target - M c||^2 together with M c. The closest-point routines score
/// candidates through this function on the reduced basis, so equal reduced
/// coefficients always give bit-identical distances.
inline double squared_distance(const Eigen::MatrixXd& basis, std::span<const long long> w,
                               std::span<const double> target, std::vector<double>* point = nullptr) {
    const auto rows = basis.rows();
    const auto cols = basis.cols();
    if (point) point->assign(static_cast<std::size_t>(rows), 0.0);
    double d = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        double xi = 0.0;
        for (Eigen::Index j = 0; j < cols; ++j) xi += basis(i, j) * static_cast<double>(w[static_cast<std::size_t>(j)]);
        const double diff = target[static_cast<std::size_t>(i)] - xi;
        d += diff * diff;
        if (point) (*point)[static_cast<std::size_t>(i)] = xi;
    }
    return d;
}

namespace detail {

// Depth-first Schnorr-Euchner enumeration over the reduced basis.
class SphereSearch {
public:
    SphereSearch(const DualBasis& basis, std::span<const double> target)
        : basis_(basis), target_(target), r_(basis.triangular_factor()), n_(static_cast<Eigen::Index>(basis.rank())) {
        const Eigen::Map<const Eigen::VectorXd> t(target.data(), static_cast<Eigen::Index>(target.size()));
        const Eigen::VectorXd rhs = basis.reduced_basis().transpose() * t;
        // G w_real = B'^T t, with G = R^T R.
        center_ = r_.triangularView<Eigen::Upper>().solve(
            r_.transpose().triangularView<Eigen::Lower>().solve(rhs));
        scale_ = t.squaredNorm() + basis.reduced_gram().diagonal().maxCoeff();
        coeffs_.assign(static_cast<std::size_t>(n_), 0);
    }

    CvpSolution run() {
        descend(n_ - 1, 0.0);
        detail::ensure(found_ || n_ == 0, "closest_point: enumeration found no lattice point");
        CvpSolution out;
        out.w = basis_.to_basis_coordinates(best_u_);
        out.x = std::move(best_x_);
        out.dist_sq = best_d_;
        return out;
    }

private:
    double prune_limit() const { return radius_ + 1e-10 * radius_ + 1e-13 * scale_; }

    void descend(Eigen::Index level, double partial) {
        // Projected centre at this level given the already fixed coordinates above it.
        double c = center_(level);
        for (Eigen::Index j = level + 1; j < n_; ++j)
            c -= r_(level, j) / r_(level, level) * (static_cast<double>(coeffs_[static_cast<std::size_t>(j)]) - center_(j));
        const double rii2 = r_(level, level) * r_(level, level);
        const long long start = static_cast<long long>(std::floor(c + 0.5));
        const long long dir = (c >= static_cast<double>(start)) ? 1 : -1;
        for (long long step = 0;; ++step) {
            // 0, +1, -1, +2, -2, ... towards the nearer side first.
            const long long offset = (step + 1) / 2 * ((step % 2 == 1) ? dir : -dir);
            const long long value = start + offset;
            const double diff = static_cast<double>(value) - c;
            const double d = partial + rii2 * diff * diff;
            if (d > prune_limit()) break;
            coeffs_[static_cast<std::size_t>(level)] = value;
            if (level == 0) {
                visit_leaf(d);
            } else {
                descend(level - 1, d);
            }
        }
    }

    void visit_leaf(double enumerated) {
        std::vector<double> x;
        const double d = squared_distance(basis_.reduced_basis(), coeffs_, target_, &x);
        if (!found_ || d < best_d_) {
            found_ = true;
            best_u_ = coeffs_;
            best_x_ = std::move(x);
            best_d_ = d;
        }
        if (enumerated < radius_) radius_ = enumerated;
    }

    const DualBasis& basis_;
    std::span<const double> target_;
    const Eigen::MatrixXd& r_;
    Eigen::Index n_;
    Eigen::VectorXd center_;
    double scale_ = 0.0;
    double radius_ = std::numeric_limits<double>::infinity();
    std::vector<long long> coeffs_;
    bool found_ = false;
    std::vector<long long> best_u_;
    std::vector<double> best_x_;
    double best_d_ = 0.0;
};

} // namespace detail

/// Exact closest point of the lattice spanned by basis.basis() to target.
///
/// Sphere decoding over the reduced basis with a shrinking radius. Candidates
/// within a relative 1e-10 of the current radius are all scored by
/// squared_distance, and the first strictly smallest one in zig-zag visit
/// order is returned. w is mapped back to basis() coordinates exactly.
inline CvpSolution closest_point(const DualBasis& basis, std::span<const double> target) {
    detail::require(target.size() == basis.dimension(), "closest_point: target has length " +
                                                            std::to_string(target.size()) + ", expected " +
                                                            std::to_string(basis.dimension()));
    for (double t : target) detail::require(std::isfinite(t), "closest_point: target is not finite");
    return detail::SphereSearch(basis, target).run();
}

} // namespace phaserange

#endif
