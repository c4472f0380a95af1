#ifndef PHASERANGE_PLAN_HPP
#define PHASERANGE_PLAN_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "phaserange/errors.hpp"
#include "phaserange/exactmath.hpp"

namespace phaserange {

/// A validated wavelength set with its period P = lcm(wavelengths) and the
/// integer vector v_n = P / lambda_n. gcd(v) = 1 always holds.
class RangingPlan {
public:
    std::size_t size() const noexcept { return wavelengths_.size(); }
    const std::vector<Rational>& wavelengths() const noexcept { return wavelengths_; }
    const Rational& period() const noexcept { return period_; }
    const std::vector<BigInt>& v() const noexcept { return v_; }

    double period_value() const noexcept { return period_double_; }
    /// 1 / lambda_n as doubles, nearest to the exact value.
    const std::vector<double>& inverse_wavelengths() const noexcept { return inverse_wavelengths_; }

    friend bool operator==(const RangingPlan& a, const RangingPlan& b) {
        return a.wavelengths_ == b.wavelengths_;
    }

private:
    friend RangingPlan build_plan(std::span<const Rational> wavelengths);

    std::vector<Rational> wavelengths_;
    Rational period_;
    std::vector<BigInt> v_;
    double period_double_ = 0.0;
    std::vector<double> inverse_wavelengths_;
};

inline RangingPlan build_plan(std::span<const Rational> wavelengths) {
    detail::require(wavelengths.size() >= 2,
                    "a ranging plan needs at least 2 wavelengths, got " + std::to_string(wavelengths.size()));
    RangingPlan plan;
    plan.period_ = lcm_rationals(wavelengths);  // validates positivity
    plan.wavelengths_.assign(wavelengths.begin(), wavelengths.end());
    plan.period_double_ = plan.period_.to_double();
    BigInt joint = 0;
    for (const Rational& w : wavelengths) {
        const Rational ratio = plan.period_ / w;
        detail::ensure(ratio.is_integer(), "build_plan: P / lambda is not an integer");
        plan.v_.push_back(ratio.num());
        joint = gcd(joint, ratio.num());
        plan.inverse_wavelengths_.push_back((Rational(1) / w).to_double());
    }
    detail::ensure(joint == 1, "build_plan: v is not jointly coprime");
    return plan;
}

inline RangingPlan build_plan(const std::vector<Rational>& wavelengths) {
    return build_plan(std::span<const Rational>(wavelengths));
}

} // namespace phaserange

#endif
