#include <doctest.h>

#include <cmath>
#include <vector>

#include "fnn/model.hpp"
#include "fnn/objective.hpp"
#include "fnn/optimize.hpp"
#include "fnn/random.hpp"

namespace {

fnn::FourierNetworkParams random_params(std::uint64_t seed, int n) {
    fnn::Rng rng(seed);
    fnn::FourierNetworkParams p;
    p.w.resize(n);
    p.phi.resize(n);
    p.lambda.resize(n);
    for (auto& v : p.w) v = rng.normal(0.0, 2.0);
    for (auto& v : p.phi) v = rng.uniform(-3.0, 3.0);
    for (auto& v : p.lambda) v = rng.normal(0.0, 1.0);
    p.phi0 = rng.normal(0.0, 0.5);
    return p;
}

// Reference trained weights for the cos+sin fit (L2 regularization).
fnn::FourierNetworkParams cos_sin_reference_params() {
    fnn::FourierNetworkParams p;
    p.w = {1.00000000, -5.96856597e-07, 1.22755482e-06, 4.59348246e-08};
    p.phi = {-0.78539816, -1.00911547, 1.87773726, -6.38405893};
    p.lambda = {1.41421354, -2.60499122e-05, -4.76966579e-05, 1.77429347e-05};
    p.phi0 = -1.81893539e-05;
    return p;
}

// Trained weights of the Poisson run.
fnn::FourierNetworkParams poisson_table_params() {
    fnn::FourierNetworkParams p;
    p.w = {-3.77424453e-10, -1.16548318e-10, 1.00000000, -1.18183192e-09};
    p.phi = {-4.42730681, 2.46210794, 3.14159265, 0.79153364};
    p.lambda = {4.90842033e-05, -1.45660922e-05, -1.01321184e-01, -1.60990031e-06};
    p.phi0 = 0.0;
    return p;
}

}  // namespace

TEST_CASE("fnn_forward basics") {
    fnn::FourierNetworkParams p;
    p.w = {1.0, 2.0};
    p.phi = {0.3, -0.8};
    p.lambda = {0.0, 0.0};
    p.phi0 = 1.25;
    CHECK(fnn::fnn_forward(p, 0.7) == doctest::Approx(1.25));  // dead hidden layer

    fnn::FourierNetworkParams q;
    q.w = {2.0};
    q.phi = {0.0};
    q.lambda = {3.0};
    q.phi0 = -1.0;
    CHECK(fnn::fnn_forward(q, 0.25) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("Reference trained parameters reproduce cos+sin at zero") {
    CHECK(fnn::fnn_forward(cos_sin_reference_params(), 0.0) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("parameter validation") {
    fnn::FourierNetworkParams p;
    p.w = {1.0};
    p.phi = {0.0, 0.0};
    p.lambda = {1.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("input derivatives of cos(pi x) at 0") {
    fnn::FourierNetworkParams p;
    p.w = {1.0};
    p.phi = {0.0};
    p.lambda = {1.0};
    p.phi0 = 0.0;
    const auto d = fnn::fnn_input_derivatives(p, 0.0, 2);
    CHECK(d.u == doctest::Approx(1.0));
    CHECK(d.du == doctest::Approx(0.0));
    CHECK(d.d2u == doctest::Approx(-fnn::kPi * fnn::kPi).epsilon(1e-12));
}

TEST_CASE("order-0 derivatives equal the forward pass") {
    const auto p = random_params(5, 6);
    for (double x = -2.0; x <= 2.0; x += 0.23) {
        CHECK(fnn::fnn_input_derivatives(p, x, 0).u == fnn::fnn_forward(p, x));
    }
}

TEST_CASE("second input derivative matches central differences") {
    const auto p = random_params(17, 5);
    const double h = 1e-4;
    for (double x = -1.0; x <= 1.0; x += 0.31) {
        const double fd = (fnn::fnn_forward(p, x + h) - 2.0 * fnn::fnn_forward(p, x) +
                           fnn::fnn_forward(p, x - h)) /
                          (h * h);
        const double an = fnn::fnn_input_derivatives(p, x, 2).d2u;
        CHECK(an == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("Poisson table weights solve -u'' = cos(pi x) to 1e-3") {
    const auto p = poisson_table_params();
    double sup = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = -1.0 + 2.0 * i / 200.0;
        const double r = -fnn::fnn_input_derivatives(p, x, 2).d2u - std::cos(fnn::kPi * x);
        sup = std::max(sup, std::fabs(r));
    }
    CHECK(sup <= 1e-3);
}

TEST_CASE("periodicity by construction for integer frequencies") {
    fnn::FourierNetworkParams p;
    p.w = {1.0, 3.0, -2.0};
    p.phi = {0.4, -1.2, 2.7};
    p.lambda = {1.5, -0.3, 0.8};
    p.phi0 = 0.2;
    for (double x = -1.0; x <= 1.0; x += 0.17) {
        CHECK(fnn::fnn_forward(p, x + 2.0) == doctest::Approx(fnn::fnn_forward(p, x)).epsilon(1e-13));
    }
}

TEST_CASE("evenness: flipping (w, phi) signs leaves the output unchanged") {
    auto p = random_params(23, 4);
    auto flipped = p;
    for (std::size_t k = 0; k < p.size(); ++k) {
        flipped.w[k] = -p.w[k];
        flipped.phi[k] = -p.phi[k];
    }
    for (double x = -2.0; x <= 2.0; x += 0.37) {
        CHECK(fnn::fnn_forward(flipped, x) == doctest::Approx(fnn::fnn_forward(p, x)).epsilon(1e-13));
    }
}

TEST_CASE("normalize_params preserves the function and orients frequencies") {
    const auto p = random_params(31, 6);
    const auto n = fnn::normalize_params(p);
    for (std::size_t k = 0; k < n.size(); ++k) {
        CHECK(n.w[k] >= 0.0);
        CHECK(n.phi[k] > -fnn::kPi);
        CHECK(n.phi[k] <= fnn::kPi);
    }
    for (double x = -2.0; x <= 2.0; x += 0.41) {
        CHECK(fnn::fnn_forward(n, x) == doctest::Approx(fnn::fnn_forward(p, x)).epsilon(1e-12));
    }
}

TEST_CASE("fnn parameter gradient matches finite differences") {
    fnn::LossSpec spec;
    spec.alpha1 = 1e-3;
    spec.alpha2 = 2e-3;
    spec.alpha3 = 0.7;
    spec.alpha4 = 0.4;

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto p = random_params(seed, 4);
        const auto points = fnn::sample_uniform(seed + 100, 16, -1.0, 1.0);
        std::vector<double> targets(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            targets[i] = std::sin(2.0 * points[i]);

        for (fnn::RegNorm norm : {fnn::RegNorm::L2, fnn::RegNorm::L1}) {
            spec.reg_norm = norm;
            const auto grad = fnn::fnn_param_gradient(p, points, targets, spec);
            auto flat = p.flatten();
            const double h = 1e-6;
            for (std::size_t i = 0; i < flat.size(); ++i) {
                auto plus = flat, minus = flat;
                plus[i] += h;
                minus[i] -= h;
                fnn::FourierNetworkParams pp = p, pm = p;
                pp.unflatten(plus);
                pm.unflatten(minus);
                const double fd = (fnn::approximation_loss(pp, points, targets, spec) -
                                   fnn::approximation_loss(pm, points, targets, spec)) /
                                  (2.0 * h);
                CHECK(std::fabs(grad[i] - fd) <=
                      1e-6 * std::max(1.0, std::fabs(fd)) + 1e-9);
            }
        }
    }
}

TEST_CASE("gradient w.r.t. w vanishes when all lambda are zero") {
    fnn::FourierNetworkParams p;
    p.w = {0.7, -1.3};
    p.phi = {0.2, 0.9};
    p.lambda = {0.0, 0.0};
    p.phi0 = 0.1;
    fnn::LossSpec spec;
    spec.alpha1 = spec.alpha2 = 0.0;
    const std::vector<double> pts = {-0.5, 0.1, 0.8};
    const std::vector<double> tg = {1.0, -1.0, 0.5};
    const auto grad = fnn::fnn_param_gradient(p, pts, tg, spec);
    CHECK(grad[0] == 0.0);
    CHECK(grad[1] == 0.0);
}

TEST_CASE("pure L2 term has gradient 2*alpha1*lambda") {
    fnn::FourierNetworkParams p;
    p.w = {1.0, 2.0};
    p.phi = {0.0, 0.0};
    p.lambda = {0.5, -1.5};
    p.phi0 = 0.0;
    fnn::LossSpec with, without;
    with.alpha1 = 0.01;
    without.alpha1 = 0.0;
    with.alpha2 = without.alpha2 = 0.0;
    with.alpha3 = without.alpha3 = 0.0;
    with.alpha4 = without.alpha4 = 0.0;
    const std::vector<double> pts = {0.25, -0.5};
    const std::vector<double> tg = {0.0, 0.0};
    const auto g1 = fnn::fnn_param_gradient(p, pts, tg, with);
    const auto g0 = fnn::fnn_param_gradient(p, pts, tg, without);
    CHECK(g1[4] - g0[4] == doctest::Approx(2.0 * 0.01 * 0.5).epsilon(1e-14));
    CHECK(g1[5] - g0[5] == doctest::Approx(2.0 * 0.01 * -1.5).epsilon(1e-14));
}

TEST_CASE("dense network: zero weights give the final bias") {
    auto p = fnn::DenseNetworkParams::zeros({1, 8, 1});
    p.biases[1][0] = 0.37;
    CHECK(fnn::dense_forward(p, 1.7) == doctest::Approx(0.37));
}

TEST_CASE("dense network: 1x1 tanh composition equals the direct formula") {
    auto p = fnn::DenseNetworkParams::zeros({1, 1, 1});
    p.weights[0][0] = 1.0;
    p.weights[1][0] = 1.0;
    CHECK(fnn::dense_forward(p, 0.5) == doctest::Approx(std::tanh(0.5)).epsilon(1e-15));
}

TEST_CASE("dense shape mismatch is rejected") {
    auto p = fnn::DenseNetworkParams::zeros({1, 4, 1});
    p.weights[0].pop_back();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("dense gradient matches finite differences") {
    auto p = fnn::init_glorot(77, {1, 6, 4, 1});
    const auto points = fnn::sample_uniform(3, 12, -1.0, 1.0);
    std::vector<double> targets(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) targets[i] = points[i] * points[i];
    fnn::LossSpec spec;
    spec.alpha1 = 1e-4;

    const auto grad = fnn::dense_param_gradient(p, points, targets, spec);
    auto flat = p.flatten();
    const double h = 1e-6;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        auto plus = flat, minus = flat;
        plus[i] += h;
        minus[i] -= h;
        fnn::DenseNetworkParams pp = p, pm = p;
        pp.unflatten(plus);
        pm.unflatten(minus);
        const double fd = (fnn::dense_loss_grad(pp, points, targets, spec, nullptr) -
                           fnn::dense_loss_grad(pm, points, targets, spec, nullptr)) /
                          (2.0 * h);
        CHECK(std::fabs(grad[i] - fd) <= 1e-6 * std::max(1.0, std::fabs(fd)) + 1e-9);
    }
}

TEST_CASE("dense input derivative matches finite differences") {
    const auto p = fnn::init_glorot(5, {1, 8, 8, 1});
    const double h = 1e-5;
    for (double t = 0.0; t <= 2.0; t += 0.29) {
        const auto [v, d] = fnn::dense_forward_with_derivative(p, t);
        CHECK(v == doctest::Approx(fnn::dense_forward(p, t)));
        const double fd = (fnn::dense_forward(p, t + h) - fnn::dense_forward(p, t - h)) / (2.0 * h);
        CHECK(d == doctest::Approx(fd).epsilon(1e-7));
    }
}
