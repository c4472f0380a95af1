// phaserange: command line front end.
//
//   phaserange basis <plan>
//   phaserange estimate <plan> <phases> [--verify]
//   phaserange simulate --plan <plan> [--r0 R] [--trials N] [--seed S]
//                       [--sigma2-min A] [--sigma2-max B] [--sigma2-points K]
//                       [--out PATH]
//
// Exit codes: 0 success, 2 input error, 3 internal error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phaserange.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace pr = phaserange;

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

json integer_json(const pr::BigInt& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
        return static_cast<long long>(x);
    }
    return x.str();
}

json integer_array(const std::vector<pr::BigInt>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(integer_json(x));
    return out;
}

json integer_rows(const pr::IntMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

// JSON numbers with exactly 17 significant digits, which nlohmann's
// shortest-round-trip formatting does not produce.
std::string real_rows(const Eigen::MatrixXd& m) {
    std::string out = "[";
    char buf[40];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "[" : ", [";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            std::string num = buf;
            if (num.find_first_of(".eEn") == std::string::npos) num += ".0";
            out += (j == 0 ? "" : ", ") + num;
        }
        out += "]";
    }
    return out + "]";
}

int cmd_basis(const std::string& plan_path) {
    const pr::RangingPlan plan = pr::read_plan_file(plan_path);
    const pr::DualBasis basis = pr::build_dual_basis(plan);
    const pr::IntegerScaling scaling = pr::minimal_integer_scaling(plan.wavelengths());

    json out;
    out["N"] = plan.size();
    json ws = json::array();
    for (const auto& w : plan.wavelengths()) ws.push_back(w.str());
    out["wavelengths"] = ws;
    out["P"] = plan.period().str();
    out["v"] = integer_array(plan.v());
    out["g"] = integer_array(pr::gcd_chain(plan.v()));
    out["U"] = integer_rows(basis.lift().u);
    out["U2"] = integer_rows(basis.lift().u2);
    out["B"] = "@B@";
    out["pairwise_coprime_scalable"] = pr::scale_to_coprime_check(plan.wavelengths());
    out["scale_factor"] = scaling.factor.str();
    out["scaled_wavelengths"] = integer_array(scaling.scaled);

    std::string text = out.dump(2);
    const std::string placeholder = "\"@B@\"";
    text.replace(text.find(placeholder), placeholder.size(), real_rows(basis.basis()));
    std::cout << text << '\n';
    return 0;
}

int cmd_estimate(const std::string& plan_path, const std::string& phases_path, bool verify, std::size_t grid_points) {
    const pr::RangingPlan plan = pr::read_plan_file(plan_path);
    const pr::PhaseObservation y = pr::read_phase_file(phases_path, plan.size());
    const pr::DualBasis basis = pr::build_dual_basis(plan);
    const pr::RangeEstimate est = pr::estimate(plan, basis, y);

    json out;
    out["P"] = plan.period().str();
    out["r_hat"] = est.r_hat;
    out["beta_hat"] = est.beta_hat;
    out["z_hat"] = integer_array(est.z_hat);
    out["residual"] = est.residual;
    if (verify) {
        const pr::oracle::GridMinimum ref = pr::oracle::grid_argmin(plan, y, grid_points);
        out["oracle"] = {{"r", ref.r}, {"value", ref.value}, {"grid_points", grid_points}};
        out["oracle_agrees"] = est.residual <= ref.value + 1e-9;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct SimulateArgs {
    std::string plan;
    double r0 = 20.0;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    double sigma2_min = 1e-5;
    double sigma2_max = 1e-2;
    std::size_t sigma2_points = 25;
    std::string out = "-";
    unsigned workers = 0;
};

int cmd_simulate(const SimulateArgs& args) {
    pr::SimConfig config;
    config.plan = pr::read_plan_file(args.plan);
    config.r0 = args.r0;
    config.trials = args.trials;
    config.seed = args.seed;
    config.sigma2_grid = pr::log_grid(args.sigma2_min, args.sigma2_max, args.sigma2_points);
    config.workers = args.workers;
    const pr::SweepResult result = pr::run_sweep(config);

    std::ostringstream csv;
    pr::write_csv(csv, result);
    if (args.out == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream file(args.out, std::ios::binary);
        if (!file) throw pr::InputError(args.out + ": cannot open for writing");
        file << csv.str();
        if (!file) throw pr::InputError(args.out + ": write failed");
    }
    std::uint64_t failures = 0;
    for (const auto& r : result.records) failures += r.failures;
    if (failures > 0) std::cerr << "warning: " << failures << " trials failed to produce an estimate\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-wavelength phase ranging by closest lattice point search"};
    app.require_subcommand(1);

    std::string plan_path;
    std::string phases_path;
    bool verify = false;
    std::size_t grid_points = 1000000;
    SimulateArgs sim;

    auto* basis = app.add_subcommand("basis", "Print P, v, the unimodular lift U and the dual basis B as JSON");
    basis->add_option("plan", plan_path, "Plan file, one wavelength (p or p/q) per line")->required();

    auto* est = app.add_subcommand("estimate", "Least squares range estimate from a phase file, as JSON");
    est->add_option("plan", plan_path, "Plan file")->required();
    est->add_option("phases", phases_path, "Phase file, one value in [-0.5, 0.5) per line")->required();
    est->add_flag("--verify", verify, "Cross-check against a dense grid search of the objective");
    est->add_option("--grid-points", grid_points, "Grid size for --verify")->check(CLI::Range(1000, 100000000));

    auto* simc = app.add_subcommand("simulate", "Monte Carlo MSE sweep over the noise variance, as CSV");
    simc->add_option("--plan", sim.plan, "Plan file")->required();
    simc->add_option("--r0", sim.r0, "True range")->capture_default_str();
    simc->add_option("--trials", sim.trials, "Trials per noise level")->capture_default_str()->check(CLI::PositiveNumber);
    simc->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    simc->add_option("--sigma2-min", sim.sigma2_min, "Smallest noise variance")->capture_default_str();
    simc->add_option("--sigma2-max", sim.sigma2_max, "Largest noise variance")->capture_default_str();
    simc->add_option("--sigma2-points", sim.sigma2_points, "Number of log-spaced variances")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    simc->add_option("--out", sim.out, "Output CSV path, '-' for stdout")->capture_default_str();
    simc->add_option("--workers", sim.workers, "Worker threads, 0 for all cores")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*basis) return cmd_basis(plan_path);
        if (*est) return cmd_estimate(plan_path, phases_path, verify, grid_points);
        if (*simc) return cmd_simulate(sim);
    } catch (const pr::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const pr::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
