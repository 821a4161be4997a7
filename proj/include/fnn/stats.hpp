#pragma once

// Closed-form statistics behind the variance-matching weight initialization
// of the cosine network: the mean and variance of a hidden activation
// cos(pi*W*X) with X uniform on [-1,1] and W ~ N(0, m^2), and the matching
// output-weight scale.

#include <cmath>
#include <stdexcept>

namespace fnn {

inline constexpr double kPi = 3.14159265358979323846;

// Error function, computed from the cancellation-free expansion
//   erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_{n>=0} (2x^2)^n / (1*3*...*(2n+1)).
// Every term is positive, so the sum carries no cancellation and the result
// is bit-stable across platforms. Absolute error below 1e-14 for |x| <= 6.
inline double erf(double x) {
    if (x == 0.0) return 0.0;
    const double ax = std::fabs(x);
    if (ax > 7.0) return x > 0.0 ? 1.0 : -1.0;  // 1 - erf(7) < 1e-21
    const double x2 = ax * ax;
    double term = ax;  // n = 0 term before the prefactor
    double sum = term;
    for (int n = 1; n < 400; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < sum * 1e-18) break;
    }
    const double r = 2.0 / std::sqrt(kPi) * std::exp(-x2) * sum;
    return x > 0.0 ? r : -r;
}

// Mean of a hidden activation: mu(X_k) = erf(m*pi/sqrt(2)) / (m*sqrt(2*pi)).
inline double hidden_mean(double m) {
    if (m == 0.0) throw std::invalid_argument("hidden_mean: m must be nonzero");
    return erf(m * kPi / std::sqrt(2.0)) / (m * std::sqrt(2.0 * kPi));
}

// Second moment of a hidden activation,
//   mu(X_k^2) = 1/2 + erf(sqrt(2)*m*pi) / (4*sqrt(2*pi)*m).
inline double hidden_second_moment(double m) {
    if (m == 0.0) throw std::invalid_argument("hidden_second_moment: m must be nonzero");
    return 0.5 + erf(std::sqrt(2.0) * m * kPi) / (4.0 * std::sqrt(2.0 * kPi) * m);
}

inline double hidden_variance(double m) {
    const double mu = hidden_mean(m);
    return hidden_second_moment(m) - mu * mu;
}

// Bisection root of hidden_variance(m) = target over the given bracket.
// Runs once per initialization; unconditional convergence matters more than
// iteration count here.
inline double solve_variance_match(double target, double lo, double hi,
                                   double tol = 1e-6) {
    double flo = hidden_variance(lo) - target;
    double fhi = hidden_variance(hi) - target;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("solve_variance_match: no sign change over bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = hidden_variance(mid) - target;
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Standard deviation v for the hidden-to-output weights such that the output
// variance on the first forward pass matches the hidden-activation variance:
//   v^2 = sigma^2(X_k) / (N * mu(X_k^2)).
// The matched variance is evaluated from hidden_variance(m) at runtime rather
// than stored as a rounded literal, so the defining identity holds exactly.
inline double output_weight_std(double m, int hidden_count) {
    if (!(m > 0.0)) throw std::invalid_argument("output_weight_std: m must be > 0");
    if (hidden_count < 1) throw std::invalid_argument("output_weight_std: hidden_count >= 1");
    return std::sqrt(hidden_variance(m) /
                     (hidden_count * hidden_second_moment(m)));
}

// Scales (m, v) of the two weight distributions plus the hidden width.
struct InitSpec {
    double m = 0.0;
    double v = 0.0;
    int hidden_count = 0;

    static InitSpec derived_scheme(double m, int hidden_count) {
        InitSpec s;
        s.m = m;
        s.v = output_weight_std(m, hidden_count);
        s.hidden_count = hidden_count;
        return s;
    }
};

}  // namespace fnn
