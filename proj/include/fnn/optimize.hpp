#pragma once

// Full-batch training. The default optimizer is limited-memory BFGS with an
// Armijo backtracking line search; Adam and plain gradient descent are
// available as first-order fallbacks. Everything is deterministic given the
// seed: the sample is fixed per run and summation order never changes.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fnn/model.hpp"
#include "fnn/objective.hpp"
#include "fnn/random.hpp"
#include "fnn/stats.hpp"

namespace fnn {

enum class Optimizer { QuasiNewton, Adam, GradientDescent };

struct TrainConfig {
    int max_iterations = 5000;
    double loss_tolerance = 1e-6;
    double grad_tolerance = 1e-8;
    Optimizer optimizer = Optimizer::QuasiNewton;
    double learning_rate = 1e-2;  // Adam / GradientDescent
    int sample_count = 256;
    std::uint64_t seed = 1;
    double init_m = 2.2360679774997896;  // sqrt(5)
    bool resample = false;  // draw a fresh sample every iteration
    int restarts = 1;       // independent seeded restarts, best loss wins

    void validate() const {
        if (max_iterations < 1) throw std::invalid_argument("TrainConfig: max_iterations >= 1");
        if (!(loss_tolerance > 0.0) || !(grad_tolerance > 0.0))
            throw std::invalid_argument("TrainConfig: tolerances must be > 0");
        if (sample_count < 2) throw std::invalid_argument("TrainConfig: sample_count >= 2");
        if (restarts < 1) throw std::invalid_argument("TrainConfig: restarts >= 1");
    }
};

struct TrainReport {
    int iterations_run = 0;
    double final_loss = 0.0;
    std::vector<double> loss_history;  // length iterations_run + 1
    std::vector<double> final_x;       // flat trained parameters
    bool converged = false;
    double wall_time = 0.0;  // seconds; informational, never serialized
};

class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Objective over a flat parameter vector: returns the loss, fills the gradient.
using FlatObjective =
    std::function<double(const std::vector<double>&, std::vector<double>&)>;

namespace detail {

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct LbfgsMemory {
    std::deque<std::vector<double>> s, y;
    std::deque<double> rho;
    std::size_t capacity = 10;

    void push(std::vector<double> si, std::vector<double> yi) {
        const double sy = dot(si, yi);
        if (sy <= 1e-14) return;  // skip updates that break positive curvature
        s.push_back(std::move(si));
        y.push_back(std::move(yi));
        rho.push_back(1.0 / sy);
        if (s.size() > capacity) {
            s.pop_front();
            y.pop_front();
            rho.pop_front();
        }
    }

    void clear() {
        s.clear();
        y.clear();
        rho.clear();
    }

    // Two-loop recursion; returns the descent direction for gradient g.
    std::vector<double> direction(const std::vector<double>& g) const {
        std::vector<double> q = g;
        const std::size_t k = s.size();
        std::vector<double> alpha(k);
        for (std::size_t i = k; i-- > 0;) {
            alpha[i] = rho[i] * dot(s[i], q);
            for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[i] * y[i][j];
        }
        if (k > 0) {
            const double gamma = dot(s[k - 1], y[k - 1]) / dot(y[k - 1], y[k - 1]);
            for (auto& x : q) x *= gamma;
        }
        for (std::size_t i = 0; i < k; ++i) {
            const double beta = rho[i] * dot(y[i], q);
            for (std::size_t j = 0; j < q.size(); ++j) q[j] += (alpha[i] - beta) * s[i][j];
        }
        for (auto& x : q) x = -x;
        return q;
    }
};

}  // namespace detail

// Minimize an objective from x0. Stops when the loss or the gradient
// infinity norm drops below its tolerance, or at max_iterations. The loss
// history records only accepted iterates, so it is non-increasing for the
// quasi-Newton path.
inline TrainReport minimize(const FlatObjective& objective, std::vector<double> x,
                            const TrainConfig& config) {
    config.validate();
    const auto t_start = std::chrono::steady_clock::now();

    TrainReport report;
    std::vector<double> grad(x.size());
    double loss = objective(x, grad);
    if (!std::isfinite(loss)) throw DivergenceError("minimize: non-finite initial loss");
    report.loss_history.push_back(loss);

    detail::LbfgsMemory memory;
    std::vector<double> m1, m2;  // Adam moments
    if (config.optimizer == Optimizer::Adam) {
        m1.assign(x.size(), 0.0);
        m2.assign(x.size(), 0.0);
    }

    int iter = 0;
    bool converged = loss < config.loss_tolerance ||
                     detail::inf_norm(grad) < config.grad_tolerance;
    while (!converged && iter < config.max_iterations) {
        bool accepted = false;
        if (config.optimizer == Optimizer::QuasiNewton) {
            std::vector<double> dir = memory.direction(grad);
            double slope = detail::dot(grad, dir);
            if (!(slope < 0.0)) {
                memory.clear();
                dir = grad;
                for (auto& d : dir) d = -d;
                slope = detail::dot(grad, dir);
            }
            const double gnorm = detail::inf_norm(grad);
            double step = memory.s.empty() ? std::min(1.0, 1.0 / std::max(gnorm, 1e-12))
                                           : 1.0;
            std::vector<double> x_new(x.size()), grad_new(x.size());
            for (int bt = 0; bt < 60; ++bt) {
                for (std::size_t i = 0; i < x.size(); ++i) x_new[i] = x[i] + step * dir[i];
                const double loss_new = objective(x_new, grad_new);
                if (!std::isfinite(loss_new)) {
                    step *= 0.5;
                    continue;
                }
                if (loss_new <= loss + 1e-4 * step * slope) {
                    std::vector<double> s(x.size()), yv(x.size());
                    for (std::size_t i = 0; i < x.size(); ++i) {
                        s[i] = x_new[i] - x[i];
                        yv[i] = grad_new[i] - grad[i];
                    }
                    memory.push(std::move(s), std::move(yv));
                    x = x_new;
                    grad = grad_new;
                    loss = loss_new;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;  // line search stalled; x is the best point seen
        } else {
            if (config.optimizer == Optimizer::Adam) {
                constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
                const double t = static_cast<double>(iter + 1);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    m1[i] = b1 * m1[i] + (1.0 - b1) * grad[i];
                    m2[i] = b2 * m2[i] + (1.0 - b2) * grad[i] * grad[i];
                    const double mhat = m1[i] / (1.0 - std::pow(b1, t));
                    const double vhat = m2[i] / (1.0 - std::pow(b2, t));
                    x[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + eps);
                }
            } else {
                for (std::size_t i = 0; i < x.size(); ++i)
                    x[i] -= config.learning_rate * grad[i];
            }
            loss = objective(x, grad);
            if (!std::isfinite(loss)) throw DivergenceError("minimize: loss diverged");
            accepted = true;
        }
        ++iter;
        report.loss_history.push_back(loss);
        converged = loss < config.loss_tolerance ||
                    detail::inf_norm(grad) < config.grad_tolerance;
    }

    report.iterations_run = static_cast<int>(report.loss_history.size()) - 1;
    report.final_loss = loss;
    report.final_x = std::move(x);
    report.converged = converged;
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

// ---------------------------------------------------------------------------
// Initialization

// w ~ N(0, init_m^2), lambda ~ N(0, v^2) with v from the variance-matching
// formula; all biases start at zero.
inline FourierNetworkParams init_fourier(const TrainConfig& config, int hidden_count,
                                         double period = 2.0) {
    if (hidden_count < 1) throw std::invalid_argument("init_fourier: hidden_count >= 1");
    const double v = output_weight_std(config.init_m, hidden_count);
    Rng rng(config.seed);
    FourierNetworkParams p;
    p.period = period;
    p.w.resize(hidden_count);
    p.phi.assign(hidden_count, 0.0);
    p.lambda.resize(hidden_count);
    p.phi0 = 0.0;
    for (auto& x : p.w) x = rng.normal(0.0, config.init_m);
    for (auto& x : p.lambda) x = rng.normal(0.0, v);
    return p;
}

// Glorot-uniform weights, bound sqrt(6/(fan_in+fan_out)); zero biases.
inline DenseNetworkParams init_glorot(std::uint64_t seed,
                                      const std::vector<int>& layer_sizes) {
    auto p = DenseNetworkParams::zeros(layer_sizes);
    Rng rng(seed);
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        const double bound =
            std::sqrt(6.0 / (layer_sizes[l] + layer_sizes[l + 1]));
        for (auto& x : p.weights[l]) x = rng.uniform(-bound, bound);
    }
    return p;
}

inline std::vector<double> sample_training_points(const TrainConfig& config,
                                                  double lo, double hi) {
    return sample_uniform(config.seed, static_cast<std::size_t>(config.sample_count),
                          lo, hi);
}

namespace detail {

// Seed for the k-th resampled batch of a run; k = 0 is the initial sample.
inline std::uint64_t resample_seed(std::uint64_t seed, std::uint64_t k) {
    return k == 0 ? seed : seed ^ (0x9e3779b97f4a7c15ULL * k);
}

}  // namespace detail

namespace detail {

// The network is linear in (lambda, phi0), and the data, regularization and
// periodicity terms are all quadratic in them. The quasi-Newton iteration
// leaves a shallow valley along near-constant nodes (their lambda trades off
// against phi0 at almost no cost), so finish with the exact ridge solution of
// that linear subproblem. L2 regularization only; returns false when the
// normal system is degenerate.
inline bool polish_linear(FourierNetworkParams& p, const std::vector<double>& points,
                          const std::vector<double>& targets, const LossSpec& spec) {
    if (spec.reg_norm != RegNorm::L2) return false;
    const std::size_t n = p.size();
    const std::size_t d = n + 1;  // [lambda | phi0]
    const double om = p.omega();
    const double inv_m = 1.0 / static_cast<double>(points.size());

    std::vector<double> H(d * d, 0.0), rhs(d, 0.0), row(d);
    auto accumulate = [&](double weight, double target) {
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) H[a * d + b] += weight * row[a] * row[b];
            rhs[a] += weight * row[a] * target;
        }
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i];
        for (std::size_t k = 0; k < n; ++k) row[k] = std::cos(om * p.w[k] * x + p.phi[k]);
        row[n] = 1.0;
        accumulate(inv_m, targets[i]);
        for (double shift : {spec.period, -spec.period}) {
            const double alpha = (shift > 0.0) ? spec.alpha3 : spec.alpha4;
            if (alpha == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k)
                row[k] = std::cos(om * p.w[k] * (x + shift) + p.phi[k]) -
                         std::cos(om * p.w[k] * x + p.phi[k]);
            row[n] = 0.0;
            accumulate(alpha * inv_m, 0.0);
            for (std::size_t k = 0; k < n; ++k)
                row[k] = std::cos(om * p.w[k] * x + p.phi[k]);
            row[n] = 1.0;
        }
    }
    for (std::size_t k = 0; k < n; ++k) H[k * d + k] += spec.alpha1;

    // Gaussian elimination with partial pivoting on the (small) normal system.
    std::vector<double> x(rhs);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::fabs(H[r * d + col]) > std::fabs(H[piv * d + col])) piv = r;
        if (std::fabs(H[piv * d + col]) < 1e-12) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < d; ++c) std::swap(H[piv * d + c], H[col * d + c]);
            std::swap(x[piv], x[col]);
        }
        for (std::size_t r = col + 1; r < d; ++r) {
            const double f = H[r * d + col] / H[col * d + col];
            for (std::size_t c = col; c < d; ++c) H[r * d + c] -= f * H[col * d + c];
            x[r] -= f * x[col];
        }
    }
    for (std::size_t col = d; col-- > 0;) {
        for (std::size_t c = col + 1; c < d; ++c) x[col] -= H[col * d + c] * x[c];
        x[col] /= H[col * d + col];
    }
    for (std::size_t k = 0; k < n; ++k) p.lambda[k] = x[k];
    p.phi0 = x[n];
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// High-level training runs

// Fit the cosine network to a target function on [lo, hi]. With restarts > 1
// the run is repeated from seeds derived from config.seed and the best final
// loss wins; the whole procedure stays deterministic.
inline std::pair<FourierNetworkParams, TrainReport> train_fnn_approximation(
    const ScalarFn& target, int hidden_count, const LossSpec& spec,
    const TrainConfig& config, double lo = -1.0, double hi = 1.0) {
    config.validate();
    spec.validate();

    FourierNetworkParams best_params;
    TrainReport best_report;
    for (int r = 0; r < config.restarts; ++r) {
        TrainConfig run = config;
        run.seed = config.seed + 0x51ed2700ULL * static_cast<std::uint64_t>(r);
        auto params = init_fourier(run, hidden_count, spec.period);
        auto points = sample_training_points(run, lo, hi);
        std::vector<double> targets(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) targets[i] = target(points[i]);

        FourierNetworkParams scratch = params;
        std::uint64_t draw = 0;
        FlatObjective obj = [&](const std::vector<double>& x, std::vector<double>& g) {
            scratch.unflatten(x);
            if (run.resample && draw > 0) {
                TrainConfig fresh = run;
                fresh.seed = detail::resample_seed(run.seed, draw);
                points = sample_training_points(fresh, lo, hi);
                for (std::size_t i = 0; i < points.size(); ++i)
                    targets[i] = target(points[i]);
            }
            ++draw;
            return approximation_loss_grad(scratch, points, targets, spec, &g);
        };
        auto report = minimize(obj, params.flatten(), run);
        params.unflatten(report.final_x);
        FourierNetworkParams polished = params;
        if (detail::polish_linear(polished, points, targets, spec)) {
            const double loss =
                approximation_loss_grad(polished, points, targets, spec, nullptr);
            if (loss < report.final_loss) {
                params = polished;
                report.final_loss = loss;
                report.final_x = params.flatten();
                report.loss_history.push_back(loss);
            }
        }
        if (r == 0 || report.final_loss < best_report.final_loss) {
            best_params = params;
            best_report = std::move(report);
        }
    }
    return {normalize_params(best_params), best_report};
}

// Same protocol for the tanh baseline (for side-by-side comparisons).
inline std::pair<DenseNetworkParams, TrainReport> train_dense_approximation(
    const ScalarFn& target, const std::vector<int>& layer_sizes, const LossSpec& spec,
    const TrainConfig& config, double lo = -1.0, double hi = 1.0) {
    config.validate();

    DenseNetworkParams best_params;
    TrainReport best_report;
    for (int r = 0; r < config.restarts; ++r) {
        TrainConfig run = config;
        run.seed = config.seed + 0x51ed2700ULL * static_cast<std::uint64_t>(r);
        auto params = init_glorot(run.seed, layer_sizes);
        auto points = sample_training_points(run, lo, hi);
        std::vector<double> targets(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) targets[i] = target(points[i]);

        DenseNetworkParams scratch = params;
        std::uint64_t draw = 0;
        FlatObjective obj = [&](const std::vector<double>& x, std::vector<double>& g) {
            scratch.unflatten(x);
            if (run.resample && draw > 0) {
                TrainConfig fresh = run;
                fresh.seed = detail::resample_seed(run.seed, draw);
                points = sample_training_points(fresh, lo, hi);
                for (std::size_t i = 0; i < points.size(); ++i)
                    targets[i] = target(points[i]);
            }
            ++draw;
            return dense_loss_grad(scratch, points, targets, spec, &g);
        };
        auto report = minimize(obj, params.flatten(), run);
        if (r == 0 || report.final_loss < best_report.final_loss) {
            params.unflatten(report.final_x);
            best_params = params;
            best_report = std::move(report);
        }
    }
    return {best_params, best_report};
}

}  // namespace fnn
