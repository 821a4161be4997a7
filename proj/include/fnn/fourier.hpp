#pragma once

// Ground-truth Fourier analysis: coefficient quadrature, the reduced
// amplitude/phase form, and the mapping between a trained cosine network and
// a truncated Fourier series.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fnn/model.hpp"

namespace fnn {

// Truncated series a0/2 + sum_n a_n cos(n w x) + b_n sin(n w x), w = 2*pi/T.
struct FourierSpectrum {
    double a0 = 0.0;
    std::vector<double> a;
    std::vector<double> b;
    double period = 2.0;

    std::size_t modes() const { return a.size(); }
};

// Same series as a0/2 + sum_n c_n cos(n w x + psi_n).
struct ReducedSpectrum {
    double a0 = 0.0;
    std::vector<double> c;
    std::vector<double> psi;
    double period = 2.0;
};

inline double evaluate_series(const FourierSpectrum& s, double x) {
    const double om = 2.0 * kPi / s.period;
    double y = 0.5 * s.a0;
    for (std::size_t n = 0; n < s.modes(); ++n) {
        const double arg = om * static_cast<double>(n + 1) * x;
        y += s.a[n] * std::cos(arg) + s.b[n] * std::sin(arg);
    }
    return y;
}

// Coefficients by composite Simpson quadrature over one period:
//   a_n = (2/T) int f(x) cos(n w x) dx,  b_n likewise with sin.
// grid_size must be odd (Simpson) and resolve the highest mode.
template <typename F>
FourierSpectrum quadrature_coefficients(F&& f, int n_modes, double period = 2.0,
                                        int grid_size = 4097) {
    if (n_modes < 0) throw std::invalid_argument("quadrature_coefficients: n_modes >= 0");
    if (grid_size < 8 * std::max(n_modes, 1) || grid_size % 2 == 0)
        throw std::invalid_argument(
            "quadrature_coefficients: grid too coarse (need odd size >= 8*n_modes)");
    const double lo = -0.5 * period;
    const double h = period / static_cast<double>(grid_size - 1);
    const double om = 2.0 * kPi / period;

    std::vector<double> fx(static_cast<std::size_t>(grid_size));
    for (int i = 0; i < grid_size; ++i) fx[i] = f(lo + h * i);

    auto simpson = [&](auto&& g) {
        double s = g(0) + g(grid_size - 1);
        for (int i = 1; i < grid_size - 1; ++i) s += (i % 2 ? 4.0 : 2.0) * g(i);
        return s * h / 3.0;
    };

    FourierSpectrum spec;
    spec.period = period;
    spec.a0 = (2.0 / period) * simpson([&](int i) { return fx[i]; });
    spec.a.resize(n_modes);
    spec.b.resize(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        const double k = om * n;
        spec.a[n - 1] = (2.0 / period) *
                        simpson([&](int i) { return fx[i] * std::cos(k * (lo + h * i)); });
        spec.b[n - 1] = (2.0 / period) *
                        simpson([&](int i) { return fx[i] * std::sin(k * (lo + h * i)); });
    }
    return spec;
}

// c_n = sqrt(a_n^2 + b_n^2), psi_n = atan2(-b_n, a_n); (0,0) maps to (0,0).
inline ReducedSpectrum reduced_form(const FourierSpectrum& s) {
    ReducedSpectrum r;
    r.a0 = s.a0;
    r.period = s.period;
    r.c.resize(s.modes());
    r.psi.resize(s.modes());
    for (std::size_t n = 0; n < s.modes(); ++n) {
        r.c[n] = std::hypot(s.a[n], s.b[n]);
        r.psi[n] = (r.c[n] == 0.0) ? 0.0 : std::atan2(-s.b[n], s.a[n]);
    }
    return r;
}

inline FourierSpectrum from_reduced(const ReducedSpectrum& r) {
    FourierSpectrum s;
    s.a0 = r.a0;
    s.period = r.period;
    s.a.resize(r.c.size());
    s.b.resize(r.c.size());
    for (std::size_t n = 0; n < r.c.size(); ++n) {
        s.a[n] = r.c[n] * std::cos(r.psi[n]);
        s.b[n] = -r.c[n] * std::sin(r.psi[n]);
    }
    return s;
}

struct SpectrumExtraction {
    FourierSpectrum spectrum;
    // Significant nodes whose frequency was not close to an integer; reported,
    // not fatal.
    std::vector<std::size_t> non_integer_nodes;
};

// Read a truncated Fourier series off the trained network weights. Each node
// with |lambda| >= amp_tol and a near-integer frequency is folded into mode
// round(w); multiple nodes on one mode add as phasors. Nodes at mode zero or
// below the amplitude threshold contribute lambda*cos(phi) to the constant.
inline SpectrumExtraction extract_spectrum(const FourierNetworkParams& params,
                                           int n_modes, double freq_tol = 0.05,
                                           double amp_tol = 1e-3) {
    if (n_modes < 0) throw std::invalid_argument("extract_spectrum: n_modes >= 0");
    const auto p = normalize_params(params);

    SpectrumExtraction out;
    out.spectrum.period = p.period;
    out.spectrum.a.assign(static_cast<std::size_t>(n_modes), 0.0);
    out.spectrum.b.assign(static_cast<std::size_t>(n_modes), 0.0);
    double constant = p.phi0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double mode = std::round(p.w[k]);
        const bool integer_freq = std::fabs(p.w[k] - mode) <= freq_tol;
        const bool significant = std::fabs(p.lambda[k]) >= amp_tol;
        const int n = static_cast<int>(mode);
        if (!significant || (integer_freq && n == 0)) {
            constant += p.lambda[k] * std::cos(p.phi[k]);
        } else if (!integer_freq) {
            out.non_integer_nodes.push_back(k);  // reported, dropped from the series
        } else if (n <= n_modes) {
            out.spectrum.a[n - 1] += p.lambda[k] * std::cos(p.phi[k]);
            out.spectrum.b[n - 1] -= p.lambda[k] * std::sin(p.phi[k]);
        }
        // significant integer modes above n_modes fall outside the truncation
    }
    out.spectrum.a0 = 2.0 * constant;
    return out;
}

// One node per nonzero mode: w = n, phi = psi_n, lambda = c_n, phi0 = a0/2.
inline FourierNetworkParams params_from_spectrum(const FourierSpectrum& s) {
    const auto r = reduced_form(s);
    FourierNetworkParams p;
    p.period = s.period;
    p.phi0 = 0.5 * s.a0;
    for (std::size_t n = 0; n < r.c.size(); ++n) {
        if (r.c[n] == 0.0) continue;
        p.w.push_back(static_cast<double>(n + 1));
        p.phi.push_back(r.psi[n]);
        p.lambda.push_back(r.c[n]);
    }
    if (p.w.empty()) {  // keep the container valid for a constant series
        p.w.push_back(1.0);
        p.phi.push_back(0.0);
        p.lambda.push_back(0.0);
    }
    return p;
}

struct SpectrumError {
    std::vector<double> a_error;  // |a_n - a_n'| per mode
    std::vector<double> b_error;
    double a0_error = 0.0;        // |a0/2 - a0'/2|
    double max_error = 0.0;
};

inline SpectrumError spectrum_error(const FourierSpectrum& lhs,
                                    const FourierSpectrum& rhs) {
    if (std::fabs(lhs.period - rhs.period) > 1e-12)
        throw std::invalid_argument("spectrum_error: period mismatch");
    SpectrumError e;
    e.a0_error = std::fabs(0.5 * lhs.a0 - 0.5 * rhs.a0);
    e.max_error = e.a0_error;
    const std::size_t n = std::min(lhs.modes(), rhs.modes());
    for (std::size_t i = 0; i < n; ++i) {
        e.a_error.push_back(std::fabs(lhs.a[i] - rhs.a[i]));
        e.b_error.push_back(std::fabs(lhs.b[i] - rhs.b[i]));
        e.max_error = std::max({e.max_error, e.a_error.back(), e.b_error.back()});
    }
    return e;
}

// Analytic series of the 2-periodic test functions.
inline FourierSpectrum analytic_spectrum_x_squared(int n_modes) {
    FourierSpectrum s;
    s.period = 2.0;
    s.a0 = 2.0 / 3.0;
    for (int n = 1; n <= n_modes; ++n) {
        s.a.push_back(4.0 * ((n % 2) ? -1.0 : 1.0) / (kPi * kPi * n * n));
        s.b.push_back(0.0);
    }
    return s;
}

inline FourierSpectrum analytic_spectrum_abs_x(int n_modes) {
    FourierSpectrum s;
    s.period = 2.0;
    s.a0 = 1.0;
    for (int n = 1; n <= n_modes; ++n) {
        s.a.push_back((n % 2) ? -4.0 / (kPi * kPi * n * n) : 0.0);
        s.b.push_back(0.0);
    }
    return s;
}

}  // namespace fnn
