#ifndef PHASERANGE_ESTIMATOR_HPP
#define PHASERANGE_ESTIMATOR_HPP

// Least squares range estimation from wrapped phase differences.
//
// Y_n = <r0 / lambda_n + noise_n>, and r_hat minimises
// LS(r) = sum_n <Y_n - r / lambda_n>^2 over [0, P). Writing r = P beta the
// problem becomes min over (beta, z in Z^N) of ||Y - beta v - z||^2, i.e. a
// closest point search for Q Y in the lattice {Q z}.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaserange/cvp.hpp"
#include "phaserange/errors.hpp"
#include "phaserange/exactmath.hpp"
#include "phaserange/lattice.hpp"
#include "phaserange/plan.hpp"

namespace phaserange {

/// Centred fractional part x - floor(x + 1/2), in [-1/2, 1/2).
inline double wrap(double x) {
    double r = x - std::floor(x + 0.5);
    // x + 0.5 rounds up to an integer for x just below a half-integer.
    if (r < -0.5) r += 1.0;
    if (r >= 0.5) r -= 1.0;
    return r;
}

/// Phase differences Y, each in [-1/2, 1/2).
class PhaseObservation {
public:
    PhaseObservation() = default;
    explicit PhaseObservation(std::vector<double> values) : values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double y = values_[i];
            detail::require(std::isfinite(y) && y >= -0.5 && y < 0.5,
                            "phase " + std::to_string(i) + " = " + std::to_string(y) + " is outside [-1/2, 1/2)");
        }
    }

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

struct RangeEstimate {
    double r_hat = 0.0;       // in [0, P)
    double beta_hat = 0.0;    // r_hat = P * frac(beta_hat)
    std::vector<BigInt> z_hat;
    double residual = 0.0;    // LS(r_hat)
};

inline double ls_objective(const RangingPlan& plan, const PhaseObservation& y, double r) {
    detail::require(y.size() == plan.size(), "ls_objective: observation length does not match plan");
    const std::vector<double>& inv = plan.inverse_wavelengths();
    double sum = 0.0;
    for (std::size_t n = 0; n < y.size(); ++n) {
        const double e = wrap(y[n] - r * inv[n]);
        sum += e * e;
    }
    return sum;
}

inline PhaseObservation synthesize_observation(const RangingPlan& plan, double r0, std::span<const double> phase_noise) {
    detail::require(std::isfinite(r0), "synthesize_observation: range is not finite");
    detail::require(phase_noise.size() == plan.size(), "synthesize_observation: noise has length " +
                                                           std::to_string(phase_noise.size()) + ", plan has " +
                                                           std::to_string(plan.size()) + " wavelengths");
    const std::vector<double>& inv = plan.inverse_wavelengths();
    std::vector<double> y(plan.size());
    for (std::size_t n = 0; n < y.size(); ++n) y[n] = wrap(r0 * inv[n] + phase_noise[n]);
    return PhaseObservation(std::move(y));
}

inline PhaseObservation synthesize_observation(const RangingPlan& plan, double r0) {
    const std::vector<double> zero(plan.size(), 0.0);
    return synthesize_observation(plan, r0, zero);
}

namespace detail {
inline constexpr double kSnapTolerance = 1e-12;
}

inline RangeEstimate estimate(const RangingPlan& plan, const DualBasis& basis, const PhaseObservation& y) {
    detail::require(basis.v() == plan.v(), "estimate: basis was built for a different plan");
    detail::require(y.size() == plan.size(), "estimate: observation has " + std::to_string(y.size()) +
                                                 " phases, plan has " + std::to_string(plan.size()) + " wavelengths");
    const std::size_t n = plan.size();
    const std::vector<BigInt>& v = plan.v();
    const double norm_sq = static_cast<double>(basis.v_norm_sq());

    std::vector<double> vd(n);
    double yv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        vd[i] = static_cast<double>(v[i]);
        yv += y[i] * vd[i];
    }
    std::vector<double> target(n);
    const double along = yv / norm_sq;
    for (std::size_t i = 0; i < n; ++i) target[i] = y[i] - vd[i] * along;

    const CvpSolution cvp = closest_point(basis, target);
    RangeEstimate out;
    out.z_hat = basis.lift().u2.apply(std::span<const BigInt>(cvp.w));

    // beta = (Y^T v - z^T v) / ||v||^2. Split z^T v = q ||v||^2 + rem exactly
    // so that the fractional part is formed from small quantities.
    const BigInt zv = dot(out.z_hat, v);
    const BigInt q = floor_div(zv, basis.v_norm_sq());
    const BigInt rem = zv - q * basis.v_norm_sq();
    const double frac_source = (yv - static_cast<double>(rem)) / norm_sq;
    out.beta_hat = frac_source - static_cast<double>(q);

    double frac = frac_source - std::floor(frac_source);
    if (frac < detail::kSnapTolerance || frac > 1.0 - detail::kSnapTolerance) frac = 0.0;
    out.r_hat = plan.period_value() * frac;
    if (out.r_hat >= plan.period_value()) out.r_hat = 0.0;
    out.residual = ls_objective(plan, y, out.r_hat);
    return out;
}

} // namespace phaserange

#endif
