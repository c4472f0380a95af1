#ifndef PHASERANGE_SIMULATE_HPP
#define PHASERANGE_SIMULATE_HPP

// Monte Carlo MSE sweeps of the least squares range estimator under wrapped
// normal phase noise.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "phaserange/errors.hpp"
#include "phaserange/estimator.hpp"
#include "phaserange/lattice.hpp"
#include "phaserange/plan.hpp"
#include "phaserange/random.hpp"

namespace phaserange {

/// wrap(X) with X ~ Normal(0, sigma2). Consumes exactly one 64-bit draw.
template <typename Rng>
double sample_wrapped_normal(double sigma2, Rng& rng) {
    detail::require(sigma2 > 0.0, "sample_wrapped_normal: variance must be positive");
    return wrap(std::sqrt(sigma2) * normal_quantile(uniform_open(rng)));
}

/// n points spaced evenly in log10 between lo and hi, inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    detail::require(lo > 0.0 && hi >= lo, "log_grid: need 0 < lo <= hi");
    detail::require(points >= 1, "log_grid: need at least one point");
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

struct SimConfig {
    RangingPlan plan;
    double r0 = 20.0;
    std::vector<double> sigma2_grid = log_grid(1e-5, 1e-2, 25);
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0: one per hardware thread
};

struct SweepRecord {
    double sigma2 = 0.0;
    double mse = 0.0;
    std::uint64_t trials = 0;     // trials that produced an estimate
    double mean_error = 0.0;
    double max_abs_error = 0.0;
    std::uint64_t failures = 0;   // trials whose estimate threw

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

namespace detail {

inline constexpr std::uint64_t kChunkTrials = 1024;

struct ChunkTotals {
    double sum_sq = 0.0;
    double sum = 0.0;
    double max_abs = 0.0;
    std::uint64_t count = 0;
    std::uint64_t failures = 0;
};

} // namespace detail

/// Runs `trials` noisy observations per noise level from r0 and scores the
/// plain squared error (r_hat - r0)^2. Trial i always uses the stream
/// derive_stream(seed, i), and partial sums are formed over fixed chunks of
/// trials and combined in chunk order, so the result does not depend on the
/// number of workers.
inline SweepResult run_sweep(const SimConfig& config) {
    const RangingPlan& plan = config.plan;
    detail::require(config.trials >= 1, "run_sweep: trials must be at least 1");
    detail::require(!config.sigma2_grid.empty(), "run_sweep: empty sigma2 grid");
    for (double s : config.sigma2_grid) detail::require(s > 0.0, "run_sweep: sigma2 values must be positive");
    detail::require(std::isfinite(config.r0) && config.r0 >= 0.0 && config.r0 < plan.period_value(),
                    "run_sweep: r0 must lie in [0, P)");

    const DualBasis basis = build_dual_basis(plan);
    const std::size_t n = plan.size();
    const std::uint64_t chunks = (config.trials + detail::kChunkTrials - 1) / detail::kChunkTrials;
    unsigned workers = config.workers != 0 ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

    SweepResult result;
    for (double sigma2 : config.sigma2_grid) {
        std::vector<detail::ChunkTotals> totals(chunks);
        std::atomic<std::uint64_t> next{0};
        auto work = [&]() {
            std::vector<double> noise(n);
            for (std::uint64_t c = next++; c < chunks; c = next++) {
                detail::ChunkTotals& t = totals[c];
                const std::uint64_t end = std::min(config.trials, (c + 1) * detail::kChunkTrials);
                for (std::uint64_t trial = c * detail::kChunkTrials; trial < end; ++trial) {
                    SplitMix64 rng = derive_stream(config.seed, trial);
                    for (double& x : noise) x = sample_wrapped_normal(sigma2, rng);
                    try {
                        const PhaseObservation y = synthesize_observation(plan, config.r0, noise);
                        const double err = estimate(plan, basis, y).r_hat - config.r0;
                        t.sum_sq += err * err;
                        t.sum += err;
                        t.max_abs = std::max(t.max_abs, std::fabs(err));
                        ++t.count;
                    } catch (const std::exception&) {
                        ++t.failures;
                    }
                }
            }
        };
        if (workers <= 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        }

        detail::ChunkTotals all;
        for (const detail::ChunkTotals& t : totals) {
            all.sum_sq += t.sum_sq;
            all.sum += t.sum;
            all.max_abs = std::max(all.max_abs, t.max_abs);
            all.count += t.count;
            all.failures += t.failures;
        }
        SweepRecord rec;
        rec.sigma2 = sigma2;
        rec.trials = all.count;
        rec.failures = all.failures;
        if (all.count > 0) {
            rec.mse = all.sum_sq / static_cast<double>(all.count);
            rec.mean_error = all.sum / static_cast<double>(all.count);
        }
        rec.max_abs_error = all.max_abs;
        result.records.push_back(rec);
    }
    return result;
}

/// Smallest sigma2 whose MSE is at least jump_factor times the MSE at the
/// previous grid point; nullopt when no such jump occurs.
inline std::optional<double> detect_threshold(const SweepResult& result, double jump_factor) {
    const auto& recs = result.records;
    detail::require(recs.size() >= 2, "detect_threshold: need at least 2 grid points");
    detail::require(jump_factor > 1.0, "detect_threshold: jump factor must exceed 1");
    for (std::size_t i = 1; i < recs.size(); ++i) {
        detail::require(recs[i].sigma2 > recs[i - 1].sigma2, "detect_threshold: sweep is not sorted by sigma2");
    }
    for (std::size_t i = 1; i < recs.size(); ++i) {
        if (recs[i].mse >= jump_factor * recs[i - 1].mse && recs[i].mse > 0.0) return recs[i].sigma2;
    }
    return std::nullopt;
}

inline constexpr const char* kCsvHeader = "sigma2,mse,trials,mean_error,max_abs_error";

inline void write_csv(std::ostream& os, const SweepResult& result) {
    os << kCsvHeader << '\n';
    char buf[160];
    for (const SweepRecord& r : result.records) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%llu,%.12g,%.12g\n", r.sigma2, r.mse,
                      static_cast<unsigned long long>(r.trials), r.mean_error, r.max_abs_error);
        os << buf;
    }
}

} // namespace phaserange

#endif
