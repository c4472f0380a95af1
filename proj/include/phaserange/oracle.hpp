#ifndef PHASERANGE_ORACLE_HPP
#define PHASERANGE_ORACLE_HPP

// Brute-force references. Slow by construction; they share nothing with the
// estimator beyond the objective and distance definitions.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "phaserange/cvp.hpp"
#include "phaserange/errors.hpp"
#include "phaserange/estimator.hpp"
#include "phaserange/lattice.hpp"
#include "phaserange/plan.hpp"

namespace phaserange::oracle {

struct GridMinimum {
    double r = 0.0;
    double value = 0.0;
};

/// Dense scan of LS over grid_points equally spaced ranges in [0, P), then a
/// golden-section refinement inside the winning cell down to 1e-12 P.
inline GridMinimum grid_argmin(const RangingPlan& plan, const PhaseObservation& y, std::size_t grid_points) {
    detail::require(grid_points >= 1000, "grid_argmin: need at least 1000 grid points");
    detail::require(y.size() == plan.size(), "grid_argmin: observation length does not match plan");
    const double period = plan.period_value();
    const double h = period / static_cast<double>(grid_points);

    GridMinimum best{0.0, ls_objective(plan, y, 0.0)};
    for (std::size_t k = 1; k < grid_points; ++k) {
        const double r = h * static_cast<double>(k);
        const double value = ls_objective(plan, y, r);
        if (value < best.value) best = {r, value};
    }

    auto f = [&](double r) { return ls_objective(plan, y, r); };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best.r - h;
    double hi = best.r + h;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > 1e-12 * period) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    double r = 0.5 * (lo + hi);
    r -= period * std::floor(r / period);
    if (r >= period) r = 0.0;
    const double value = f(r);
    if (value < best.value) best = {r, value};
    return best;
}

/// Exhaustive closest point over the box u in [-box_radius, box_radius]^(N-1)
/// of reduced coefficients, i.e. the lattice points B T u. Throws InputError
/// if the box is too large to scan or if the minimiser touches the box
/// boundary (the box may be too small to contain the answer). Equal
/// distances resolve to the lexicographically smallest u.
inline CvpSolution brute_cvp(const DualBasis& basis, std::span<const double> target, long long box_radius) {
    const std::size_t n = basis.rank();
    detail::require(target.size() == basis.dimension(), "brute_cvp: target length does not match basis");
    detail::require(box_radius >= 0, "brute_cvp: negative box radius");
    const double side = 2.0 * static_cast<double>(box_radius) + 1.0;
    detail::require(std::pow(side, static_cast<double>(n)) <= 1e8, "brute_cvp: box has more than 1e8 points");

    const Eigen::MatrixXd& reduced = basis.reduced_basis();
    std::vector<long long> u(n, -box_radius), best_u;
    double best_d = INFINITY;
    for (;;) {
        const double d = squared_distance(reduced, u, target);
        if (d < best_d) {
            best_d = d;
            best_u = u;
        }
        // Odometer increment, last coordinate fastest, gives lexicographic order.
        std::size_t i = n;
        while (i > 0 && u[i - 1] == box_radius) {
            u[i - 1] = -box_radius;
            --i;
        }
        if (i == 0) break;
        ++u[i - 1];
    }
    for (long long c : best_u) {
        detail::require(c != box_radius && c != -box_radius,
                        "brute_cvp: minimiser lies on the box boundary; increase box_radius");
    }
    CvpSolution best;
    best.dist_sq = squared_distance(reduced, best_u, target, &best.x);
    best.w = basis.to_basis_coordinates(best_u);
    return best;
}

} // namespace phaserange::oracle

#endif
