#pragma once

// Scalar training losses and their exact parameter gradients: the
// function-approximation loss with periodicity penalty, the differential
// equation residual loss, and the separated heat-equation composite loss.
//
// Convention used throughout: every ||.||^2 data term is the MEAN of squared
// entries over the sample, not the sum. Loss values are therefore invariant
// under the sample size and directly comparable across runs. Regularization
// terms are plain norms of the weight vectors (not averaged).

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fnn/model.hpp"

namespace fnn {

using ScalarFn = std::function<double(double)>;

enum class RegNorm { L1, L2 };
enum class LossMode { Approximation, PdeResidual, HeatComposite };
enum class PdeOperator { NegativeLaplacian1D };

struct LossSpec {
    double alpha1 = 1e-5;  // regularization on lambda
    double alpha2 = 1e-5;  // regularization on w
    double alpha3 = 1.0;   // periodicity penalty, +T shift
    double alpha4 = 1.0;   // periodicity penalty, -T shift
    double alpha5 = 1.0;   // initial-condition term (heat)
    double alpha6 = 1.0;   // zero-mean gauge penalty (Poisson)
    RegNorm reg_norm = RegNorm::L2;
    double period = 2.0;
    LossMode mode = LossMode::Approximation;

    void validate() const {
        if (alpha1 < 0 || alpha2 < 0 || alpha3 < 0 || alpha4 < 0 || alpha5 < 0 ||
            alpha6 < 0)
            throw std::invalid_argument("LossSpec: penalty coefficients must be >= 0");
        if (!(period > 0.0)) throw std::invalid_argument("LossSpec: period must be > 0");
    }
};

inline double regularization(const std::vector<double>& v, RegNorm norm) {
    double r = 0.0;
    if (norm == RegNorm::L2) {
        for (double x : v) r += x * x;
    } else {
        for (double x : v) r += std::fabs(x);
    }
    return r;
}

namespace detail {

// d regularization / d v_k. L1 subgradient at 0 is taken as 0.
inline double reg_derivative(double x, RegNorm norm) {
    if (norm == RegNorm::L2) return 2.0 * x;
    return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
}

// grad += coeff * d u(x)/d p for the cosine network, flat layout [w|phi|lambda|phi0].
inline void add_fnn_value_grad(const FourierNetworkParams& p, double x, double coeff,
                               std::vector<double>& grad) {
    const std::size_t n = p.size();
    const double om = p.omega();
    for (std::size_t k = 0; k < n; ++k) {
        const double theta = om * p.w[k] * x + p.phi[k];
        const double s = std::sin(theta);
        grad[k] += coeff * (-p.lambda[k] * om * x * s);
        grad[n + k] += coeff * (-p.lambda[k] * s);
        grad[2 * n + k] += coeff * std::cos(theta);
    }
    grad[3 * n] += coeff;
}

// grad += coeff * d u''(x)/d p, with u'' = -sum lambda (om w)^2 cos(theta).
inline void add_fnn_second_deriv_grad(const FourierNetworkParams& p, double x,
                                      double coeff, std::vector<double>& grad) {
    const std::size_t n = p.size();
    const double om = p.omega();
    for (std::size_t k = 0; k < n; ++k) {
        const double f = om * p.w[k];
        const double theta = f * x + p.phi[k];
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        grad[k] += coeff * (-p.lambda[k] * (2.0 * om * f * c - f * f * om * x * s));
        grad[n + k] += coeff * (p.lambda[k] * f * f * s);
        grad[2 * n + k] += coeff * (-f * f * c);
        // phi0 does not enter u''
    }
}

inline void add_reg_grad(const FourierNetworkParams& p, const LossSpec& spec,
                         std::vector<double>& grad) {
    const std::size_t n = p.size();
    for (std::size_t k = 0; k < n; ++k) {
        grad[k] += spec.alpha2 * reg_derivative(p.w[k], spec.reg_norm);
        grad[2 * n + k] += spec.alpha1 * reg_derivative(p.lambda[k], spec.reg_norm);
    }
}

// Periodicity penalty alpha3*mean (u(x+T)-u(x))^2 + alpha4*mean (u(x-T)-u(x))^2,
// value returned, gradient accumulated if grad != nullptr.
inline double periodicity_terms(const FourierNetworkParams& p,
                                const std::vector<double>& points,
                                const LossSpec& spec, std::vector<double>* grad) {
    if (points.empty() || (spec.alpha3 == 0.0 && spec.alpha4 == 0.0)) return 0.0;
    const double T = spec.period;
    const double inv_m = 1.0 / static_cast<double>(points.size());
    double acc = 0.0;
    for (double x : points) {
        const double u0 = fnn_forward(p, x);
        if (spec.alpha3 != 0.0) {
            const double d = fnn_forward(p, x + T) - u0;
            acc += spec.alpha3 * inv_m * d * d;
            if (grad) {
                add_fnn_value_grad(p, x + T, 2.0 * spec.alpha3 * inv_m * d, *grad);
                add_fnn_value_grad(p, x, -2.0 * spec.alpha3 * inv_m * d, *grad);
            }
        }
        if (spec.alpha4 != 0.0) {
            const double d = fnn_forward(p, x - T) - u0;
            acc += spec.alpha4 * inv_m * d * d;
            if (grad) {
                add_fnn_value_grad(p, x - T, 2.0 * spec.alpha4 * inv_m * d, *grad);
                add_fnn_value_grad(p, x, -2.0 * spec.alpha4 * inv_m * d, *grad);
            }
        }
    }
    return acc;
}

}  // namespace detail

// L = mean (u_hat - u)^2 + alpha1 R(lambda) + alpha2 R(w)
//     + alpha3 mean (u_hat(x+T)-u_hat(x))^2 + alpha4 mean (u_hat(x-T)-u_hat(x))^2.
inline double approximation_loss_grad(const FourierNetworkParams& p,
                                      const std::vector<double>& points,
                                      const std::vector<double>& targets,
                                      const LossSpec& spec,
                                      std::vector<double>* grad) {
    p.validate();
    spec.validate();
    if (points.size() != targets.size() || points.empty())
        throw std::invalid_argument("approximation_loss: points/targets length mismatch");
    if (grad) grad->assign(p.flat_size(), 0.0);

    const double inv_m = 1.0 / static_cast<double>(points.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double r = fnn_forward(p, points[i]) - targets[i];
        loss += inv_m * r * r;
        if (grad) detail::add_fnn_value_grad(p, points[i], 2.0 * inv_m * r, *grad);
    }
    loss += spec.alpha1 * regularization(p.lambda, spec.reg_norm);
    loss += spec.alpha2 * regularization(p.w, spec.reg_norm);
    if (grad) detail::add_reg_grad(p, spec, *grad);
    loss += detail::periodicity_terms(p, points, spec, grad);
    return loss;
}

inline double approximation_loss(const FourierNetworkParams& p,
                                 const std::vector<double>& points,
                                 const std::vector<double>& targets,
                                 const LossSpec& spec) {
    return approximation_loss_grad(p, points, targets, spec, nullptr);
}

inline std::vector<double> fnn_param_gradient(const FourierNetworkParams& p,
                                              const std::vector<double>& points,
                                              const std::vector<double>& targets,
                                              const LossSpec& spec) {
    std::vector<double> grad;
    approximation_loss_grad(p, points, targets, spec, &grad);
    return grad;
}

// L = mean (P u_hat - f)^2 + reg + periodicity + alpha6 (mean u_hat)^2.
// P is -d^2/dx^2; the last term fixes the additive gauge of periodic
// solutions (the residual itself is invariant under phi0 shifts).
inline double pde_residual_loss_grad(const FourierNetworkParams& p,
                                     const std::vector<double>& points,
                                     const ScalarFn& forcing, PdeOperator op,
                                     const LossSpec& spec,
                                     std::vector<double>* grad) {
    p.validate();
    spec.validate();
    if (op != PdeOperator::NegativeLaplacian1D)
        throw std::invalid_argument("pde_residual_loss: unsupported operator");
    if (points.empty())
        throw std::invalid_argument("pde_residual_loss: empty sample");
    if (grad) grad->assign(p.flat_size(), 0.0);

    const double inv_m = 1.0 / static_cast<double>(points.size());
    double loss = 0.0;
    double mean_u = 0.0;
    for (double x : points) {
        const auto d = fnn_input_derivatives(p, x, 2);
        const double r = -d.d2u - forcing(x);
        loss += inv_m * r * r;
        mean_u += inv_m * d.u;
        if (grad) detail::add_fnn_second_deriv_grad(p, x, -2.0 * inv_m * r, *grad);
    }
    loss += spec.alpha1 * regularization(p.lambda, spec.reg_norm);
    loss += spec.alpha2 * regularization(p.w, spec.reg_norm);
    if (grad) detail::add_reg_grad(p, spec, *grad);
    loss += detail::periodicity_terms(p, points, spec, grad);
    if (spec.alpha6 != 0.0) {
        loss += spec.alpha6 * mean_u * mean_u;
        if (grad) {
            const double c = 2.0 * spec.alpha6 * mean_u * inv_m;
            for (double x : points) detail::add_fnn_value_grad(p, x, c, *grad);
        }
    }
    return loss;
}

inline double pde_residual_loss(const FourierNetworkParams& p,
                                const std::vector<double>& points,
                                const ScalarFn& forcing, PdeOperator op,
                                const LossSpec& spec) {
    return pde_residual_loss_grad(p, points, forcing, op, spec, nullptr);
}

// Separated heat equation u(x,t) = X(x) T(t):
//   L = mean_{x,t} (X T' - X'' T)^2 + alpha1 R(lambda) + alpha2 R(w)
//       + periodicity on X + alpha5 mean_x (X(x) T(0) - u0(x))^2.
// The residual is evaluated on the full tensor product x_points x t_points.
inline double heat_composite_loss_grad(const FourierNetworkParams& space,
                                       const DenseNetworkParams& time,
                                       const std::vector<double>& x_points,
                                       const std::vector<double>& t_points,
                                       const ScalarFn& u0, const LossSpec& spec,
                                       std::vector<double>* grad_space,
                                       std::vector<double>* grad_time) {
    space.validate();
    time.validate();
    spec.validate();
    if (x_points.empty() || t_points.empty())
        throw std::invalid_argument("heat_composite_loss: empty sample");
    if (grad_space) grad_space->assign(space.flat_size(), 0.0);
    if (grad_time) grad_time->assign(time.flat_size(), 0.0);

    const std::size_t mx = x_points.size();
    const std::size_t mt = t_points.size();
    const double inv_mm = 1.0 / static_cast<double>(mx * mt);
    const double inv_mx = 1.0 / static_cast<double>(mx);

    // Space-net values and second derivatives at the collocation points.
    std::vector<InputDerivs> xd(mx);
    for (std::size_t i = 0; i < mx; ++i)
        xd[i] = fnn_input_derivatives(space, x_points[i], 2);

    double loss = 0.0;
    // Per-x accumulated residual adjoints for the space net; per-t adjoints
    // for the time net, so each net gets one gradient pass per sample point.
    std::vector<double> cx_val(mx, 0.0), cx_d2(mx, 0.0);
    for (std::size_t j = 0; j < mt; ++j) {
        const auto [tv, td] = dense_forward_with_derivative(time, t_points[j]);
        double ybar = 0.0, gbar = 0.0;
        for (std::size_t i = 0; i < mx; ++i) {
            const double e = xd[i].u * td - xd[i].d2u * tv;
            loss += inv_mm * e * e;
            const double c = 2.0 * inv_mm * e;
            cx_val[i] += c * td;
            cx_d2[i] -= c * tv;
            gbar += c * xd[i].u;
            ybar -= c * xd[i].d2u;
        }
        if (grad_time && (ybar != 0.0 || gbar != 0.0)) {
            const auto tape = detail::dense_forward_tape(time, t_points[j]);
            detail::dense_backprop_tape(time, tape, ybar, gbar, *grad_time);
        }
    }
    if (grad_space) {
        for (std::size_t i = 0; i < mx; ++i) {
            if (cx_val[i] != 0.0)
                detail::add_fnn_value_grad(space, x_points[i], cx_val[i], *grad_space);
            if (cx_d2[i] != 0.0)
                detail::add_fnn_second_deriv_grad(space, x_points[i], cx_d2[i],
                                                  *grad_space);
        }
    }

    loss += spec.alpha1 * regularization(space.lambda, spec.reg_norm);
    loss += spec.alpha2 * regularization(space.w, spec.reg_norm);
    if (grad_space) detail::add_reg_grad(space, spec, *grad_space);
    loss += detail::periodicity_terms(space, x_points, spec, grad_space);

    if (spec.alpha5 != 0.0) {
        const auto [t0v, t0d] = dense_forward_with_derivative(time, 0.0);
        (void)t0d;
        double t0bar = 0.0;
        for (std::size_t i = 0; i < mx; ++i) {
            const double e = xd[i].u * t0v - u0(x_points[i]);
            loss += spec.alpha5 * inv_mx * e * e;
            const double c = 2.0 * spec.alpha5 * inv_mx * e;
            if (grad_space)
                detail::add_fnn_value_grad(space, x_points[i], c * t0v, *grad_space);
            t0bar += c * xd[i].u;
        }
        if (grad_time && t0bar != 0.0) {
            const auto tape = detail::dense_forward_tape(time, 0.0);
            detail::dense_backprop_tape(time, tape, t0bar, 0.0, *grad_time);
        }
    }
    return loss;
}

inline double heat_composite_loss(const FourierNetworkParams& space,
                                  const DenseNetworkParams& time,
                                  const std::vector<double>& x_points,
                                  const std::vector<double>& t_points,
                                  const ScalarFn& u0, const LossSpec& spec) {
    return heat_composite_loss_grad(space, time, x_points, t_points, u0, spec,
                                    nullptr, nullptr);
}

// ---------------------------------------------------------------------------
// Baseline tanh network: mean squared error plus regularization on the
// weight matrices (biases are not penalized). No periodicity terms.

inline double dense_loss_grad(const DenseNetworkParams& p,
                              const std::vector<double>& points,
                              const std::vector<double>& targets,
                              const LossSpec& spec, std::vector<double>* grad) {
    p.validate();
    if (points.size() != targets.size() || points.empty())
        throw std::invalid_argument("dense_loss: points/targets length mismatch");
    if (grad) grad->assign(p.flat_size(), 0.0);

    const double inv_m = 1.0 / static_cast<double>(points.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto tape = detail::dense_forward_tape(p, points[i]);
        const double r = tape.h.back()[0] - targets[i];
        loss += inv_m * r * r;
        if (grad) detail::dense_backprop_tape(p, tape, 2.0 * inv_m * r, 0.0, *grad);
    }
    std::size_t pos = 0;
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        for (std::size_t k = 0; k < p.weights[l].size(); ++k) {
            loss += spec.alpha1 * (spec.reg_norm == RegNorm::L2
                                       ? p.weights[l][k] * p.weights[l][k]
                                       : std::fabs(p.weights[l][k]));
            if (grad)
                (*grad)[pos + k] +=
                    spec.alpha1 * detail::reg_derivative(p.weights[l][k], spec.reg_norm);
        }
        pos += p.weights[l].size() + p.biases[l].size();
    }
    return loss;
}

inline std::vector<double> dense_param_gradient(const DenseNetworkParams& p,
                                                const std::vector<double>& points,
                                                const std::vector<double>& targets,
                                                const LossSpec& spec) {
    std::vector<double> grad;
    dense_loss_grad(p, points, targets, spec, &grad);
    return grad;
}

}  // namespace fnn
