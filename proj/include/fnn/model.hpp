#pragma once

// Parameter containers and evaluation for the two network shapes used here:
// the shallow cosine network and the feedforward tanh baseline. Derivatives
// with respect to the input (needed by differential-equation residuals) and
// with respect to the parameters (needed by training) are closed form; the
// finite-difference tests guard the algebra.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fnn/stats.hpp"

namespace fnn {

inline double wrap_angle(double phi) {
    // into (-pi, pi]
    double r = std::fmod(phi, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    if (r > kPi) r -= 2.0 * kPi;
    return r;
}

// u(x) = phi0 + sum_k lambda_k * cos(omega * w_k * x + phi_k),  omega = 2*pi/T.
// For the default period T = 2 this is phi0 + sum lambda_k cos(pi w_k x + phi_k).
struct FourierNetworkParams {
    std::vector<double> w;       // input->hidden weights (frequencies)
    std::vector<double> phi;     // hidden biases (phases)
    std::vector<double> lambda;  // hidden->output weights (amplitudes)
    double phi0 = 0.0;           // output bias
    double period = 2.0;

    std::size_t size() const { return w.size(); }
    double omega() const { return 2.0 * kPi / period; }

    void validate() const {
        if (w.empty() || w.size() != phi.size() || w.size() != lambda.size())
            throw std::invalid_argument("FourierNetworkParams: inconsistent array lengths");
        if (!(period > 0.0))
            throw std::invalid_argument("FourierNetworkParams: period must be > 0");
        for (std::size_t k = 0; k < w.size(); ++k)
            if (!std::isfinite(w[k]) || !std::isfinite(phi[k]) || !std::isfinite(lambda[k]))
                throw std::invalid_argument("FourierNetworkParams: non-finite entry");
        if (!std::isfinite(phi0))
            throw std::invalid_argument("FourierNetworkParams: non-finite phi0");
    }

    // Flat layout: [w | phi | lambda | phi0], used by the optimizer.
    std::size_t flat_size() const { return 3 * size() + 1; }

    std::vector<double> flatten() const {
        std::vector<double> v;
        v.reserve(flat_size());
        v.insert(v.end(), w.begin(), w.end());
        v.insert(v.end(), phi.begin(), phi.end());
        v.insert(v.end(), lambda.begin(), lambda.end());
        v.push_back(phi0);
        return v;
    }

    void unflatten(const std::vector<double>& v) {
        const std::size_t n = size();
        if (v.size() != 3 * n + 1)
            throw std::invalid_argument("FourierNetworkParams::unflatten: size mismatch");
        for (std::size_t k = 0; k < n; ++k) {
            w[k] = v[k];
            phi[k] = v[n + k];
            lambda[k] = v[2 * n + k];
        }
        phi0 = v[3 * n];
    }
};

inline double fnn_forward(const FourierNetworkParams& p, double x) {
    const double om = p.omega();
    double y = p.phi0;
    for (std::size_t k = 0; k < p.size(); ++k)
        y += p.lambda[k] * std::cos(om * p.w[k] * x + p.phi[k]);
    return y;
}

struct InputDerivs {
    double u = 0.0;
    double du = 0.0;
    double d2u = 0.0;
};

// u, u', u'' at x (orders above `order` are left at zero).
inline InputDerivs fnn_input_derivatives(const FourierNetworkParams& p, double x,
                                         int order = 2) {
    if (order < 0 || order > 2)
        throw std::invalid_argument("fnn_input_derivatives: order must be 0, 1 or 2");
    const double om = p.omega();
    InputDerivs d;
    d.u = p.phi0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double f = om * p.w[k];
        const double theta = f * x + p.phi[k];
        const double c = std::cos(theta);
        d.u += p.lambda[k] * c;
        if (order >= 1) d.du -= p.lambda[k] * f * std::sin(theta);
        if (order >= 2) d.d2u -= p.lambda[k] * f * f * c;
    }
    return d;
}

// Flip (w_k, phi_k) signs so w_k >= 0 (cos is even) and wrap phases into
// (-pi, pi]. Leaves the represented function unchanged; makes reported
// parameters comparable across runs.
inline FourierNetworkParams normalize_params(FourierNetworkParams p) {
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p.w[k] < 0.0) {
            p.w[k] = -p.w[k];
            p.phi[k] = -p.phi[k];
        }
        p.phi[k] = wrap_angle(p.phi[k]);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Feedforward tanh baseline. Hidden layers use tanh, output layer is linear.

struct DenseNetworkParams {
    std::vector<int> layer_sizes;               // e.g. {1, 16, 1}
    std::vector<std::vector<double>> weights;   // weights[l]: row-major (out x in)
    std::vector<std::vector<double>> biases;    // biases[l]: out

    static DenseNetworkParams zeros(const std::vector<int>& sizes) {
        if (sizes.size() < 2)
            throw std::invalid_argument("DenseNetworkParams: need at least 2 layers");
        for (int s : sizes)
            if (s < 1) throw std::invalid_argument("DenseNetworkParams: layer size >= 1");
        DenseNetworkParams p;
        p.layer_sizes = sizes;
        for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
            p.weights.emplace_back(static_cast<std::size_t>(sizes[l + 1]) * sizes[l], 0.0);
            p.biases.emplace_back(static_cast<std::size_t>(sizes[l + 1]), 0.0);
        }
        return p;
    }

    void validate() const {
        if (layer_sizes.size() < 2 || weights.size() != layer_sizes.size() - 1 ||
            biases.size() != weights.size())
            throw std::invalid_argument("DenseNetworkParams: inconsistent shape");
        for (std::size_t l = 0; l < weights.size(); ++l) {
            const std::size_t rows = static_cast<std::size_t>(layer_sizes[l + 1]);
            const std::size_t cols = static_cast<std::size_t>(layer_sizes[l]);
            if (weights[l].size() != rows * cols || biases[l].size() != rows)
                throw std::invalid_argument("DenseNetworkParams: layer shape mismatch");
        }
    }

    std::size_t flat_size() const {
        std::size_t n = 0;
        for (std::size_t l = 0; l < weights.size(); ++l)
            n += weights[l].size() + biases[l].size();
        return n;
    }

    std::vector<double> flatten() const {
        std::vector<double> v;
        v.reserve(flat_size());
        for (std::size_t l = 0; l < weights.size(); ++l) {
            v.insert(v.end(), weights[l].begin(), weights[l].end());
            v.insert(v.end(), biases[l].begin(), biases[l].end());
        }
        return v;
    }

    void unflatten(const std::vector<double>& v) {
        if (v.size() != flat_size())
            throw std::invalid_argument("DenseNetworkParams::unflatten: size mismatch");
        std::size_t pos = 0;
        for (std::size_t l = 0; l < weights.size(); ++l) {
            for (auto& x : weights[l]) x = v[pos++];
            for (auto& x : biases[l]) x = v[pos++];
        }
    }
};

namespace detail {

// Forward pass for scalar input that also propagates the input tangent
// g = d(activation)/d(input), so both T(t) and T'(t) fall out of one sweep.
struct DenseTape {
    std::vector<std::vector<double>> h;  // h[0] = {t}, h[l] post-activation
    std::vector<std::vector<double>> g;  // dh/dt
};

inline DenseTape dense_forward_tape(const DenseNetworkParams& p, double t) {
    const std::size_t L = p.weights.size();
    DenseTape tape;
    tape.h.resize(L + 1);
    tape.g.resize(L + 1);
    tape.h[0] = {t};
    tape.g[0] = {1.0};
    for (std::size_t l = 0; l < L; ++l) {
        const std::size_t rows = static_cast<std::size_t>(p.layer_sizes[l + 1]);
        const std::size_t cols = static_cast<std::size_t>(p.layer_sizes[l]);
        std::vector<double> s(rows), sd(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            double acc = p.biases[l][i];
            double accd = 0.0;
            const double* row = &p.weights[l][i * cols];
            for (std::size_t j = 0; j < cols; ++j) {
                acc += row[j] * tape.h[l][j];
                accd += row[j] * tape.g[l][j];
            }
            s[i] = acc;
            sd[i] = accd;
        }
        const bool last = (l + 1 == L);
        tape.h[l + 1].resize(rows);
        tape.g[l + 1].resize(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            if (last) {
                tape.h[l + 1][i] = s[i];
                tape.g[l + 1][i] = sd[i];
            } else {
                const double th = std::tanh(s[i]);
                tape.h[l + 1][i] = th;
                tape.g[l + 1][i] = (1.0 - th * th) * sd[i];
            }
        }
    }
    return tape;
}

// Reverse sweep through the tangent-extended forward pass. Seeds ybar on the
// output value and gbar on the output input-derivative; accumulates into a
// flat gradient laid out like DenseNetworkParams::flatten().
inline void dense_backprop_tape(const DenseNetworkParams& p, const DenseTape& tape,
                                double ybar, double gbar, std::vector<double>& grad) {
    const std::size_t L = p.weights.size();
    std::vector<double> hbar = {ybar};
    std::vector<double> gbar_v = {gbar};
    // flat offsets of each layer
    std::vector<std::size_t> offset(L);
    std::size_t pos = 0;
    for (std::size_t l = 0; l < L; ++l) {
        offset[l] = pos;
        pos += p.weights[l].size() + p.biases[l].size();
    }
    for (std::size_t l = L; l-- > 0;) {
        const std::size_t rows = static_cast<std::size_t>(p.layer_sizes[l + 1]);
        const std::size_t cols = static_cast<std::size_t>(p.layer_sizes[l]);
        const bool last = (l + 1 == L);
        // Recover pre-activation tangent sd from the stored post state.
        std::vector<double> sbar(rows), sdbar(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            if (last) {
                sbar[i] = hbar[i];
                sdbar[i] = gbar_v[i];
            } else {
                const double th = tape.h[l + 1][i];
                const double d = 1.0 - th * th;          // tanh'
                const double sd = (d != 0.0) ? tape.g[l + 1][i] / d : 0.0;
                sbar[i] = hbar[i] * d + gbar_v[i] * (-2.0 * th * d) * sd;
                sdbar[i] = gbar_v[i] * d;
            }
        }
        std::vector<double> hprev_bar(cols, 0.0), gprev_bar(cols, 0.0);
        double* gw = &grad[offset[l]];
        double* gb = &grad[offset[l] + p.weights[l].size()];
        for (std::size_t i = 0; i < rows; ++i) {
            const double* row = &p.weights[l][i * cols];
            for (std::size_t j = 0; j < cols; ++j) {
                gw[i * cols + j] += sbar[i] * tape.h[l][j] + sdbar[i] * tape.g[l][j];
                hprev_bar[j] += row[j] * sbar[i];
                gprev_bar[j] += row[j] * sdbar[i];
            }
            gb[i] += sbar[i];
        }
        hbar = std::move(hprev_bar);
        gbar_v = std::move(gprev_bar);
    }
}

}  // namespace detail

inline double dense_forward(const DenseNetworkParams& p, double t) {
    return detail::dense_forward_tape(p, t).h.back()[0];
}

// (T(t), T'(t)) in one pass.
inline std::pair<double, double> dense_forward_with_derivative(const DenseNetworkParams& p,
                                                               double t) {
    const auto tape = detail::dense_forward_tape(p, t);
    return {tape.h.back()[0], tape.g.back()[0]};
}

}  // namespace fnn
