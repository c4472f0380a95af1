#ifndef PHASERANGE_TESTS_SUPPORT_HPP
#define PHASERANGE_TESTS_SUPPORT_HPP

// Shared fixtures for the test suites: the four wavelength sets and a few
// exact helpers that deliberately avoid the library's own code paths.

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "phaserange/exactmath.hpp"
#include "phaserange/int_matrix.hpp"
#include "phaserange/plan.hpp"

namespace phaserange::testing {

inline std::vector<Rational> wavelengths(std::initializer_list<const char*> texts) {
    std::vector<Rational> out;
    for (const char* t : texts) out.push_back(Rational::parse(t));
    return out;
}

inline std::vector<Rational> set_a() { return wavelengths({"2", "3", "5", "7"}); }
inline std::vector<Rational> set_b() { return wavelengths({"210/79", "210/61", "210/41", "210/31"}); }
inline std::vector<Rational> set_c() { return wavelengths({"2", "3", "5", "7", "11"}); }
inline std::vector<Rational> set_d() {
    return wavelengths({"2310/877", "2310/523", "2310/277", "2310/221", "2310/211"});
}

inline RangingPlan plan_a() { return build_plan(set_a()); }
inline RangingPlan plan_b() { return build_plan(set_b()); }
inline RangingPlan plan_c() { return build_plan(set_c()); }
inline RangingPlan plan_d() { return build_plan(set_d()); }

inline std::vector<Rational> random_wavelengths(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long long> num(1, 60), den(1, 25);
    std::vector<Rational> ws;
    for (std::size_t i = 0; i < n; ++i) ws.emplace_back(num(rng), den(rng));
    return ws;
}

/// Exact inverse by Gauss-Jordan over the rationals.
inline std::vector<std::vector<Rational>> rational_inverse(const IntMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
        a[i][n + i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (a[piv][col].sign() == 0) ++piv;
        std::swap(a[piv], a[col]);
        const Rational inv = Rational(1) / a[col][col];
        for (auto& x : a[col]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].sign() == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
    return out;
}

} // namespace phaserange::testing

#endif
