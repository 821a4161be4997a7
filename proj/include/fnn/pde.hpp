#pragma once

// Physics-informed solvers for the periodic 1-D Poisson problem and the
// separated heat problem, with closed-form validation oracles.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fnn/fourier.hpp"
#include "fnn/model.hpp"
#include "fnn/objective.hpp"
#include "fnn/optimize.hpp"

namespace fnn {

enum class PdeKind { Poisson1D, Heat1D };

struct PdeProblem {
    PdeKind kind = PdeKind::Poisson1D;
    double x_lo = -1.0;
    double x_hi = 1.0;
    ScalarFn forcing;            // Poisson: -u'' = forcing
    ScalarFn initial_condition;  // heat: u(0, x)
    double time_horizon = 4.0;   // heat
    double period() const { return x_hi - x_lo; }

    void validate() const {
        if (!(x_hi > x_lo)) throw std::invalid_argument("PdeProblem: x_hi > x_lo required");
        if (kind == PdeKind::Poisson1D && !forcing)
            throw std::invalid_argument("PdeProblem: forcing required for Poisson");
        if (kind == PdeKind::Heat1D) {
            if (!initial_condition)
                throw std::invalid_argument("PdeProblem: initial condition required for heat");
            if (!(time_horizon > 0.0))
                throw std::invalid_argument("PdeProblem: time_horizon > 0 required");
        }
    }
};

struct HeatSolution {
    FourierNetworkParams space_net;
    DenseNetworkParams time_net;

    double evaluate(double x, double t) const {
        return fnn_forward(space_net, x) * dense_forward(time_net, t);
    }
};

// Validation oracles for the reference problems.
inline double exact_poisson(double x) { return std::cos(kPi * x) / (kPi * kPi); }
inline double exact_heat(double x, double t) {
    return std::sin(kPi * x) * std::exp(-kPi * kPi * t);
}

struct GridError {
    double sup_error = 0.0;
    double l2_error = 0.0;                // discrete RMS
    std::vector<double> errors;           // |u_hat - u| per grid point, row-major
};

// Pointwise error summary over a 1-D grid.
inline GridError error_grid(const std::function<double(double)>& solution,
                            const std::function<double(double)>& exact, double lo,
                            double hi, int n) {
    if (n < 1) throw std::invalid_argument("error_grid: empty grid");
    GridError g;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1);
        const double e = std::fabs(solution(x) - exact(x));
        g.errors.push_back(e);
        g.sup_error = std::max(g.sup_error, e);
        sq += e * e;
    }
    g.l2_error = std::sqrt(sq / n);
    return g;
}

// Same over an (x, t) tensor grid, row-major in t then x.
inline GridError error_grid_2d(const std::function<double(double, double)>& solution,
                               const std::function<double(double, double)>& exact,
                               double x_lo, double x_hi, int nx, double t_lo,
                               double t_hi, int nt) {
    if (nx < 1 || nt < 1) throw std::invalid_argument("error_grid_2d: empty grid");
    GridError g;
    double sq = 0.0;
    for (int j = 0; j < nt; ++j) {
        const double t = (nt == 1) ? t_lo : t_lo + (t_hi - t_lo) * j / (nt - 1);
        for (int i = 0; i < nx; ++i) {
            const double x = (nx == 1) ? x_lo : x_lo + (x_hi - x_lo) * i / (nx - 1);
            const double e = std::fabs(solution(x, t) - exact(x, t));
            g.errors.push_back(e);
            g.sup_error = std::max(g.sup_error, e);
            sq += e * e;
        }
    }
    g.l2_error = std::sqrt(sq / (static_cast<double>(nx) * nt));
    return g;
}

// Train the cosine network on the Poisson residual. The periodic problem is
// solvable only for zero-mean forcing; that is checked by quadrature up
// front. The zero-mean gauge penalty (alpha6) pins the additive constant.
inline std::pair<FourierNetworkParams, TrainReport> solve_poisson(
    const PdeProblem& problem, int hidden_count, const LossSpec& loss,
    const TrainConfig& config) {
    problem.validate();
    if (problem.kind != PdeKind::Poisson1D)
        throw std::invalid_argument("solve_poisson: problem kind must be Poisson1D");
    LossSpec spec = loss;
    spec.period = problem.period();
    spec.validate();
    config.validate();

    // Solvability: mean of the forcing over one period must vanish.
    const auto f0 = quadrature_coefficients(problem.forcing, 0, spec.period, 4097);
    if (std::fabs(0.5 * f0.a0) > 1e-8)
        throw std::invalid_argument("solve_poisson: forcing has nonzero mean over the period");

    FourierNetworkParams best_params;
    TrainReport best_report;
    for (int r = 0; r < config.restarts; ++r) {
        TrainConfig run = config;
        run.seed = config.seed + 0x51ed2700ULL * static_cast<std::uint64_t>(r);
        auto params = init_fourier(run, hidden_count, spec.period);
        auto points = sample_training_points(run, problem.x_lo, problem.x_hi);

        FourierNetworkParams scratch = params;
        std::uint64_t draw = 0;
        FlatObjective obj = [&](const std::vector<double>& x, std::vector<double>& g) {
            scratch.unflatten(x);
            if (run.resample && draw > 0) {
                TrainConfig fresh = run;
                fresh.seed = detail::resample_seed(run.seed, draw);
                points = sample_training_points(fresh, problem.x_lo, problem.x_hi);
            }
            ++draw;
            return pde_residual_loss_grad(scratch, points, problem.forcing,
                                          PdeOperator::NegativeLaplacian1D, spec, &g);
        };
        auto report = minimize(obj, params.flatten(), run);
        if (r == 0 || report.final_loss < best_report.final_loss) {
            params.unflatten(report.final_x);
            best_params = params;
            best_report = std::move(report);
        }
    }
    return {normalize_params(best_params), best_report};
}

// Jointly train the space (cosine) and time (tanh) networks against the
// separated-heat composite loss. Collocation is a uniform tensor grid;
// both parameter vectors are concatenated and driven by one optimizer.
inline std::pair<HeatSolution, TrainReport> solve_heat(
    const PdeProblem& problem, int space_hidden, const std::vector<int>& time_layers,
    const LossSpec& loss, const TrainConfig& config, int x_samples = 64,
    int t_samples = 64) {
    problem.validate();
    if (problem.kind != PdeKind::Heat1D)
        throw std::invalid_argument("solve_heat: problem kind must be Heat1D");
    LossSpec spec = loss;
    spec.period = problem.period();
    spec.validate();
    config.validate();

    std::vector<double> x_points(x_samples), t_points(t_samples);
    for (int i = 0; i < x_samples; ++i)
        x_points[i] = problem.x_lo + problem.period() * i / (x_samples - 1);
    for (int j = 0; j < t_samples; ++j)
        t_points[j] = problem.time_horizon * j / (t_samples - 1);

    HeatSolution best;
    TrainReport best_report;
    for (int r = 0; r < config.restarts; ++r) {
        TrainConfig run = config;
        run.seed = config.seed + 0x51ed2700ULL * static_cast<std::uint64_t>(r);
        auto space = init_fourier(run, space_hidden, spec.period);
        auto time = init_glorot(run.seed ^ 0x9e3779b97f4a7c15ULL, time_layers);

        const std::size_t ns = space.flat_size();
        FourierNetworkParams sspace = space;
        DenseNetworkParams stime = time;
        FlatObjective obj = [&](const std::vector<double>& x, std::vector<double>& g) {
            sspace.unflatten({x.begin(), x.begin() + static_cast<long>(ns)});
            stime.unflatten({x.begin() + static_cast<long>(ns), x.end()});
            std::vector<double> gs, gt;
            const double loss_value = heat_composite_loss_grad(
                sspace, stime, x_points, t_points, problem.initial_condition, spec,
                &gs, &gt);
            g = gs;
            g.insert(g.end(), gt.begin(), gt.end());
            return loss_value;
        };
        std::vector<double> x0 = space.flatten();
        const auto tflat = time.flatten();
        x0.insert(x0.end(), tflat.begin(), tflat.end());
        auto report = minimize(obj, std::move(x0), run);
        if (r == 0 || report.final_loss < best_report.final_loss) {
            space.unflatten(
                {report.final_x.begin(), report.final_x.begin() + static_cast<long>(ns)});
            time.unflatten({report.final_x.begin() + static_cast<long>(ns),
                            report.final_x.end()});
            best.space_net = normalize_params(space);
            best.time_net = time;
            best_report = std::move(report);
        }
    }
    return {best, best_report};
}

}  // namespace fnn
