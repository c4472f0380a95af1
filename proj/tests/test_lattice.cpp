#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "phaserange/lattice.hpp"
#include "support.hpp"

using namespace phaserange;
using namespace phaserange::testing;

namespace {

std::vector<BigInt> ints(std::initializer_list<long long> xs) { return {xs.begin(), xs.end()}; }

} // namespace

TEST(BuildPlan, SetsAToD) {
    const RangingPlan a = plan_a();
    EXPECT_EQ(a.period(), Rational(210));
    EXPECT_EQ(a.v(), ints({105, 70, 42, 30}));

    const RangingPlan b = plan_b();
    EXPECT_EQ(b.period(), Rational(210));
    EXPECT_EQ(b.v(), ints({79, 61, 41, 31}));

    const RangingPlan c = plan_c();
    EXPECT_EQ(c.period(), Rational(2310));
    EXPECT_EQ(c.v(), ints({1155, 770, 462, 330, 210}));

    const RangingPlan d = plan_d();
    EXPECT_EQ(d.period(), Rational(2310));
    EXPECT_EQ(d.v(), ints({877, 523, 277, 221, 211}));
}

TEST(BuildPlan, Errors) {
    EXPECT_THROW(build_plan(wavelengths({"5"})), InputError);
    EXPECT_THROW(build_plan(std::vector<Rational>{}), InputError);
    EXPECT_THROW(build_plan(wavelengths({"2", "-3"})), InputError);
    EXPECT_THROW(build_plan(wavelengths({"2", "0"})), InputError);
}

TEST(GcdChain, HandComputed) {
    EXPECT_EQ(gcd_chain(ints({105, 70, 42, 30})), ints({1, 2, 6, 30}));
    EXPECT_EQ(gcd_chain(ints({79, 61, 41, 31})), ints({1, 1, 1, 31}));
    for (long long k : {1, 2, 17, 1000}) EXPECT_EQ(gcd_chain(ints({1, k})), ints({1, k}));
}

TEST(GcdChain, RejectsNonCoprime) {
    EXPECT_THROW(gcd_chain(ints({4, 6, 8})), InputError);
    EXPECT_THROW(gcd_chain(std::vector<BigInt>{}), InputError);
}

TEST(ElementaryMatrix, SetABlock) {
    const auto v = ints({105, 70, 42, 30});
    const auto g = gcd_chain(v);
    const IntMatrix a3 = elementary_matrix(2, v, g);
    EXPECT_EQ(a3(2, 2), 7);
    EXPECT_EQ(a3(3, 2), 5);
    EXPECT_EQ(a3(2, 3), -3);
    EXPECT_EQ(a3(3, 3), -2);
    EXPECT_EQ(7 * a3(3, 3) - 5 * a3(2, 3), 1);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i < 2 || j < 2) {
                EXPECT_EQ(a3(i, j), i == j ? 1 : 0) << i << "," << j;
            }
}

TEST(ElementaryMatrix, UnitHeadUsesTrivialPair) {
    // v_1/g_1 = 1 here.
    const auto v = ints({1, 6});
    const IntMatrix a = elementary_matrix(0, v, gcd_chain(v));
    EXPECT_EQ(a(0, 0), 1);
    EXPECT_EQ(a(0, 1), 0);
    EXPECT_EQ(a(1, 0), 6);
    EXPECT_EQ(a(1, 1), 1);
}

TEST(ElementaryMatrix, UnitDeterminantOnSetC) {
    const RangingPlan c = plan_c();
    const auto g = gcd_chain(c.v());
    for (std::size_t k = 0; k + 1 < c.size(); ++k) EXPECT_EQ(determinant(elementary_matrix(k, c.v(), g)), 1);
}

TEST(ElementaryMatrix, IndexOutOfRange) {
    const auto v = ints({105, 70, 42, 30});
    EXPECT_THROW(elementary_matrix(3, v, gcd_chain(v)), InputError);
}

TEST(BuildLift, SetAFirstColumn) {
    const UnimodularLift lift = build_lift(plan_a());
    EXPECT_EQ(lift.u.column(0), ints({105, 70, 42, 30}));
    EXPECT_EQ(lift.u2, lift.u.drop_columns(1));
}

TEST(BuildLift, SetBUnimodular) {
    const BigInt det = determinant(build_lift(plan_b()).u);
    EXPECT_TRUE(det == 1 || det == -1);
}

TEST(BuildLift, TwoWavelengths) {
    // v = (2, 3): U = [[2, a], [3, b]] with 2b - 3a = 1.
    const UnimodularLift lift = build_lift(build_plan(wavelengths({"3", "2"})));
    EXPECT_EQ(lift.u(0, 0), 2);
    EXPECT_EQ(lift.u(1, 0), 3);
    EXPECT_EQ(2 * lift.u(1, 1) - 3 * lift.u(0, 1), 1);
    EXPECT_EQ(determinant(lift.u), 1);
}

TEST(BuildLift, RandomPlansAreUnimodular) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const RangingPlan plan = build_plan(random_wavelengths(rng, n));
        const UnimodularLift lift = build_lift(plan);
        const BigInt det = determinant(lift.u);
        ASSERT_TRUE(det == 1 || det == -1);
        ASSERT_EQ(lift.u.column(0), plan.v());
    }
}

TEST(BuildLift, ChainIdentity) {
    // v_{k+1} = A_{k+1} v_k with v_k = (v_1..v_k, g_{k+1}, 0..0).
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const RangingPlan plan = build_plan(random_wavelengths(rng, 2 + trial % 5));
        const auto& v = plan.v();
        const auto g = gcd_chain(v);
        const std::size_t n = v.size();
        auto partial = [&](std::size_t k) {  // 0-based: first k+1 entries of v, then g_{k+1}
            std::vector<BigInt> out(n, 0);
            for (std::size_t i = 0; i <= k; ++i) out[i] = v[i];
            if (k + 1 < n) out[k + 1] = g[k + 1];
            return out;
        };
        std::vector<BigInt> e1(n, 0);
        e1[0] = 1;
        ASSERT_EQ(elementary_matrix(0, v, g).apply(std::span<const BigInt>(e1)), partial(0));
        for (std::size_t k = 0; k + 2 < n; ++k) {
            const auto current = partial(k);
            ASSERT_EQ(elementary_matrix(k + 1, v, g).apply(std::span<const BigInt>(current)), partial(k + 1));
        }
        ASSERT_EQ(partial(n - 2), v);
    }
}

TEST(DualBasis, OrthogonalToVExactly) {
    for (const RangingPlan& plan : {plan_a(), plan_b(), plan_c(), plan_d()}) {
        const DualBasis basis = build_dual_basis(plan);
        for (std::size_t j = 0; j < basis.rank(); ++j) {
            Rational s = 0;
            const auto col = basis.exact_column(j);
            for (std::size_t i = 0; i < col.size(); ++i) s += col[i] * Rational(plan.v()[i]);
            EXPECT_EQ(s, Rational(0));
        }
        // The rounded basis is orthogonal up to rounding.
        Eigen::VectorXd vd(static_cast<Eigen::Index>(plan.size()));
        for (std::size_t i = 0; i < plan.size(); ++i) vd(static_cast<Eigen::Index>(i)) = static_cast<double>(plan.v()[i]);
        for (Eigen::Index j = 0; j < basis.basis().cols(); ++j) {
            const double tol = 1e-9 * vd.norm() * basis.basis().col(j).norm();
            EXPECT_LE(std::abs(basis.basis().col(j).dot(vd)), tol);
        }
    }
}

TEST(DualBasis, FullRankOnSetsAToD) {
    for (const RangingPlan& plan : {plan_a(), plan_b(), plan_c(), plan_d()}) {
        const DualBasis basis = build_dual_basis(plan);
        const IntMatrix& s = basis.scaled_basis();
        EXPECT_GT(determinant(s.transpose() * s), 0);
        EXPECT_EQ(basis.basis().rows(), static_cast<Eigen::Index>(plan.size()));
        EXPECT_EQ(basis.basis().cols(), static_cast<Eigen::Index>(plan.size() - 1));
    }
}

TEST(DualBasis, ProjectionOfIntegerPointsUsesInverseLift) {
    // Q z = B c where c is the last N-1 entries of U^{-1} z.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> coord(-20, 20);
    for (const RangingPlan& plan : {plan_a(), plan_b(), plan_c(), plan_d()}) {
        const DualBasis basis = build_dual_basis(plan);
        const auto inv = rational_inverse(basis.lift().u);
        const std::size_t n = plan.size();
        const Rational vv(basis.v_norm_sq());
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Rational> z(n);
            for (auto& x : z) x = Rational(coord(rng));
            std::vector<Rational> c(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) c[i] += inv[i][j] * z[j];
            for (const auto& ci : c) ASSERT_TRUE(ci.is_integer());
            Rational vz = 0;
            for (std::size_t i = 0; i < n; ++i) vz += Rational(plan.v()[i]) * z[i];
            for (std::size_t i = 0; i < n; ++i) {
                const Rational qz = z[i] - Rational(plan.v()[i]) * vz / vv;
                Rational bc = 0;
                for (std::size_t j = 0; j + 1 < n; ++j) bc += basis.exact_column(j)[i] * c[j + 1];
                ASSERT_EQ(qz, bc);
            }
        }
    }
}

TEST(DualBasis, IntegralInnerProductsWithPrimalLattice) {
    // Rows 2..N of U^{-1} are integer vectors orthogonal to v and span Z^N ∩ H.
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long long> coef(-9, 9);
    for (const RangingPlan& plan : {plan_a(), plan_b(), plan_c(), plan_d()}) {
        const DualBasis basis = build_dual_basis(plan);
        const auto inv = rational_inverse(basis.lift().u);
        const std::size_t n = plan.size();
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Rational> z(n);
            for (std::size_t r = 1; r < n; ++r) {
                const Rational c(coef(rng));
                for (std::size_t i = 0; i < n; ++i) z[i] += c * inv[r][i];
            }
            Rational vz = 0;
            for (std::size_t i = 0; i < n; ++i) {
                ASSERT_TRUE(z[i].is_integer());
                vz += Rational(plan.v()[i]) * z[i];
            }
            ASSERT_EQ(vz, Rational(0));
            for (std::size_t j = 0; j + 1 < n; ++j) {
                const auto col = basis.exact_column(j);
                Rational ip = 0;
                for (std::size_t i = 0; i < n; ++i) ip += col[i] * z[i];
                ASSERT_TRUE(ip.is_integer());
            }
        }
    }
}

TEST(DualBasis, ReductionIsUnimodular) {
    for (const RangingPlan& plan : {plan_a(), plan_b(), plan_c(), plan_d()}) {
        const DualBasis basis = build_dual_basis(plan);
        const BigInt det = determinant(basis.reduction());
        EXPECT_TRUE(det == 1 || det == -1);
        const Eigen::MatrixXd diff = basis.basis() * [&] {
            Eigen::MatrixXd t(basis.reduction().rows(), basis.reduction().cols());
            for (std::size_t i = 0; i < basis.reduction().rows(); ++i)
                for (std::size_t j = 0; j < basis.reduction().cols(); ++j)
                    t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        static_cast<double>(basis.reduction()(i, j));
            return t;
        }() - basis.reduced_basis();
        EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(LllReduce, SizeReducedAndLovasz) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const RangingPlan plan = build_plan(random_wavelengths(rng, 3 + trial % 4));
        const DualBasis basis = build_dual_basis(plan);
        const LllResult r = lll_reduce(basis.scaled_basis());
        ASSERT_EQ(basis.scaled_basis() * r.transform, r.basis);
        // Recompute Gram-Schmidt exactly and check both LLL conditions.
        const std::size_t n = r.basis.cols();
        std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
        std::vector<Rational> norms(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rational m = dot(r.basis.column(i), r.basis.column(j));
                for (std::size_t k = 0; k < j; ++k) m -= mu[j][k] * mu[i][k] * norms[k];
                mu[i][j] = m / norms[j];
                ASSERT_LE(mu[i][j] * mu[i][j], Rational(1, 4));
            }
            Rational len = dot(r.basis.column(i), r.basis.column(i));
            for (std::size_t k = 0; k < i; ++k) len -= mu[i][k] * mu[i][k] * norms[k];
            norms[i] = len;
            if (i > 0) {
                ASSERT_GE(norms[i], (Rational(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]);
            }
        }
    }
}

TEST(DualBasis, ScalingWavelengthsLeavesBasisUnchanged) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto ws = random_wavelengths(rng, 2 + trial % 4);
        const Rational c(static_cast<long long>(1 + rng() % 50), static_cast<long long>(1 + rng() % 50));
        std::vector<Rational> scaled;
        for (const auto& w : ws) scaled.push_back(w * c);
        const RangingPlan p1 = build_plan(ws);
        const RangingPlan p2 = build_plan(scaled);
        ASSERT_EQ(p1.v(), p2.v());
        ASSERT_EQ(p2.period(), p1.period() * c);
        const DualBasis b1 = build_dual_basis(p1);
        const DualBasis b2 = build_dual_basis(p2);
        ASSERT_EQ(b1.lift().u, b2.lift().u);
        ASSERT_EQ(b1.basis(), b2.basis());
    }
}
