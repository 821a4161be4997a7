// Acceptance suite: one pass/fail line per criterion, with the measured
// numbers printed alongside. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fnn/fnn.hpp"

namespace {

int failures = 0;

void check(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %02d %s — %s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double cos_sin(double x) { return std::cos(fnn::kPi * x) + std::sin(fnn::kPi * x); }

double multi_freq(double x) {
    return 8.0 * std::cos(4.0 * fnn::kPi * x) + std::sin(2.0 * fnn::kPi * x) +
           std::sin(fnn::kPi * x);
}

double periodic_fold(double x) { return x - 2.0 * std::round(x / 2.0); }
double x_squared(double x) { const double y = periodic_fold(x); return y * y; }
double abs_x(double x) { return std::fabs(periodic_fold(x)); }

double max_error_on(const fnn::ScalarFn& f, const fnn::ScalarFn& g, double lo,
                    double hi, int n = 401) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        m = std::max(m, std::fabs(f(x) - g(x)));
    }
    return m;
}

// ---------------------------------------------------------------------------

void criterion_initialization() {
    const double var5 = fnn::hidden_variance(std::sqrt(5.0));
    const double root = fnn::solve_variance_match(1.0 / 3.0, 0.1, 2.0);
    bool ok = std::fabs(var5 - 0.5128) <= 5e-4 && std::fabs(root - 0.6959) <= 1e-3;

    // Monte Carlo check of the closed-form mean / second moment / variance of
    // the hidden activation cos(pi w x), w ~ N(0, m^2), x ~ U(-1, 1).
    double worst_sigmas = 0.0;
    for (double m : {0.6959, 1.0, std::sqrt(5.0)}) {
        const std::size_t n = 1000000;
        fnn::Rng rng(99);
        double s1 = 0.0, s2 = 0.0, s4 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v =
                std::cos(fnn::kPi * rng.normal(0.0, m) * rng.uniform(-1.0, 1.0));
            s1 += v;
            s2 += v * v;
            s4 += v * v * v * v;
        }
        const double mean = s1 / n, m2 = s2 / n, m4 = s4 / n;
        const double se_mean = std::sqrt((m2 - mean * mean) / n);
        const double se_m2 = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
        const double z_mean = std::fabs(mean - fnn::hidden_mean(m)) / se_mean;
        const double z_m2 = std::fabs(m2 - fnn::hidden_second_moment(m)) / se_m2;
        const double var = m2 - mean * mean;
        const double se_var = se_m2 + 2.0 * std::fabs(mean) * se_mean;
        const double z_var = std::fabs(var - fnn::hidden_variance(m)) / se_var;
        worst_sigmas = std::max({worst_sigmas, z_mean, z_m2, z_var});
    }
    ok = ok && worst_sigmas <= 3.0;
    check(1, "initialization statistics", ok,
          "variance(sqrt 5) = " + fmt(var5) + ", matching root = " + fmt(root) +
              ", MC worst deviation = " + fmt(worst_sigmas) + " SE");
}

void criterion_exact_trig() {
    fnn::LossSpec spec;
    fnn::TrainConfig config;
    const auto [params, report] = fnn::train_fnn_approximation(cos_sin, 4, spec, config);

    int significant = 0;
    bool node_ok = false;
    double small = 0.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
        if (std::fabs(params.lambda[k]) > 1e-3) {
            ++significant;
            node_ok = std::fabs(params.w[k] - 1.0) <= 1e-3 &&
                      std::fabs(std::fabs(params.lambda[k]) - std::sqrt(2.0)) <= 1e-2 &&
                      std::fabs(fnn::wrap_angle(params.phi[k] + fnn::kPi / 4.0)) <= 1e-2;
        } else {
            small = std::max(small, std::fabs(params.lambda[k]));
        }
    }
    const bool ok = report.final_loss <= 1e-3 && significant == 1 && node_ok;
    check(2, "single-frequency fit recovers the exact node", ok,
          "loss = " + fmt(report.final_loss) + ", significant nodes = " +
              std::to_string(significant) + ", largest idle amplitude = " + fmt(small));
}

fnn::FourierNetworkParams g_x_squared_model, g_abs_x_model, g_cos_sin_model,
    g_multi_freq_model;

void criterion_multi_frequency() {
    fnn::LossSpec spec;
    fnn::TrainConfig config;
    const auto [params, report] = fnn::train_fnn_approximation(multi_freq, 4, spec, config);
    g_multi_freq_model = params;
    const auto s = fnn::extract_spectrum(params, 4).spectrum;
    const double eb1 = std::fabs(s.b[0] - 1.0);
    const double eb2 = std::fabs(s.b[1] - 1.0);
    const double ea4 = std::fabs(s.a[3] - 8.0);
    const bool ok =
        report.final_loss <= 1e-2 && eb1 <= 1e-2 && eb2 <= 1e-2 && ea4 <= 1e-2;
    check(3, "multi-frequency fit recovers modes 1, 2 and 4", ok,
          "loss = " + fmt(report.final_loss) + ", coefficient errors = (" + fmt(eb1) +
              ", " + fmt(eb2) + ", " + fmt(ea4) + ")");
}

void criterion_x_squared() {
    fnn::LossSpec spec;
    fnn::TrainConfig config;
    // with N = 4 every node must land on a mode; the weak fourth mode
    // (amplitude 0.025) has a small basin, so search over many seeds
    config.restarts = 24;
    const auto [params, report] = fnn::train_fnn_approximation(x_squared, 4, spec, config);
    g_x_squared_model = params;
    const auto s = fnn::extract_spectrum(params, 4).spectrum;
    const auto err = fnn::spectrum_error(s, fnn::analytic_spectrum_x_squared(4));
    const bool ok = report.final_loss <= 5e-2 && err.max_error <= 5e-3;
    check(4, "coefficient recovery for the parabolic target", ok,
          "loss = " + fmt(report.final_loss) + ", max coefficient error = " +
              fmt(err.max_error));
}

void criterion_abs_x() {
    fnn::LossSpec spec;
    fnn::TrainConfig config;
    config.restarts = 3;  // as for the parabolic target
    const auto [params, report] = fnn::train_fnn_approximation(abs_x, 4, spec, config);
    g_abs_x_model = params;
    const auto s = fnn::extract_spectrum(params, 4).spectrum;
    const auto ref = fnn::quadrature_coefficients(abs_x, 4);
    const auto err = fnn::spectrum_error(s, ref);
    const bool ok = report.final_loss <= 5e-2 && err.max_error <= 1e-2;
    check(5, "coefficient recovery for the triangular target", ok,
          "loss = " + fmt(report.final_loss) + ", max coefficient error = " +
              fmt(err.max_error));
}

void criterion_extrapolation() {
    struct Case {
        const char* name;
        fnn::ScalarFn target;
        const fnn::FourierNetworkParams* model;
    };
    const Case cases[] = {{"cos-sin", cos_sin, &g_cos_sin_model},
                          {"multi-freq", multi_freq, &g_multi_freq_model},
                          {"x-squared", x_squared, &g_x_squared_model},
                          {"abs-x", abs_x, &g_abs_x_model}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        auto model_fn = [&](double x) { return fnn::fnn_forward(*c.model, x); };
        const double err_in = max_error_on(model_fn, c.target, -1.0, 1.0);
        const double err_out = max_error_on(model_fn, c.target, 1.0, 3.0);
        const bool bounded = err_out <= 10.0 * err_in;
        ok = ok && bounded;
        if (!detail.empty()) detail += ", ";
        detail += std::string(c.name) + " " + fmt(err_out) + "/" + fmt(err_in);
    }

    // the saturating baseline cannot follow the periodic continuation
    fnn::LossSpec spec;
    fnn::TrainConfig config;
    const auto [tanh_params, tanh_report] =
        fnn::train_dense_approximation(x_squared, {1, 10, 1}, spec, config);
    auto tanh_fn = [&](double x) { return fnn::dense_forward(tanh_params, x); };
    const double tanh_out = max_error_on(tanh_fn, x_squared, 1.0, 3.0);
    ok = ok && tanh_out >= 0.5;
    check(6, "periodic extrapolation outside the training window", ok,
          detail + "; saturating baseline error beyond the window = " + fmt(tanh_out));
}

void criterion_baseline() {
    fnn::LossSpec spec;
    fnn::TrainConfig config;
    const auto [fp, fr] = fnn::train_fnn_approximation(cos_sin, 4, spec, config);
    g_cos_sin_model = fp;
    const auto [tp, tr] = fnn::train_dense_approximation(cos_sin, {1, 10, 1}, spec, config);
    const bool ok = fr.final_loss * 5.0 <= tr.final_loss;
    check(7, "cosine network beats the saturating baseline", ok,
          "losses " + fmt(fr.final_loss) + " vs " + fmt(tr.final_loss));
}

void criterion_poisson() {
    fnn::PdeProblem problem;
    problem.kind = fnn::PdeKind::Poisson1D;
    problem.forcing = [](double x) { return std::cos(fnn::kPi * x); };
    fnn::LossSpec spec;
    fnn::TrainConfig config;
    const auto [params, report] = fnn::solve_poisson(problem, 4, spec, config);

    // gauge alignment: compare zero-mean versions of both fields
    const int n = 201;
    double mean_hat = 0.0, mean_ref = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * i / (n - 1);
        mean_hat += fnn::fnn_forward(params, x) / n;
        mean_ref += fnn::exact_poisson(x) / n;
    }
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * i / (n - 1);
        sup = std::max(sup, std::fabs((fnn::fnn_forward(params, x) - mean_hat) -
                                      (fnn::exact_poisson(x) - mean_ref)));
    }
    std::size_t dominant = 0;
    for (std::size_t k = 1; k < params.size(); ++k)
        if (std::fabs(params.lambda[k]) > std::fabs(params.lambda[dominant])) dominant = k;
    const double amp_err =
        std::fabs(std::fabs(params.lambda[dominant]) - 1.0 / (fnn::kPi * fnn::kPi));
    const bool ok = sup <= 1e-4 && amp_err <= 1e-4;
    check(8, "periodic Poisson solution", ok,
          "sup error = " + fmt(sup) + ", dominant amplitude error = " + fmt(amp_err));
}

void criterion_heat() {
    const auto t0 = std::chrono::steady_clock::now();
    fnn::PdeProblem problem;
    problem.kind = fnn::PdeKind::Heat1D;
    problem.initial_condition = [](double x) { return std::sin(fnn::kPi * x); };
    problem.time_horizon = 4.0;
    fnn::LossSpec spec;
    fnn::TrainConfig config;
    config.max_iterations = 60000;  // joint training budget; runtime stays in seconds
    const auto [solution, report] = fnn::solve_heat(problem, 4, {1, 16, 1}, spec, config);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto unit = fnn::error_grid_2d(
        [&](double x, double t) { return solution.evaluate(x, t); }, fnn::exact_heat,
        -1.0, 1.0, 101, 0.0, 1.0, 101);
    const auto full = fnn::error_grid_2d(
        [&](double x, double t) { return solution.evaluate(x, t); }, fnn::exact_heat,
        -1.0, 1.0, 101, 0.0, 4.0, 101);
    const bool ok = unit.sup_error <= 1e-3 && seconds <= 300.0;
    check(9, "separated heat solution", ok,
          "sup error = " + fmt(unit.sup_error) + " on the unit time window, " +
              fmt(full.sup_error) + " on the full horizon, trained in " + fmt(seconds) +
              " s");
}

void criterion_properties() {
    // gradient vs central finite differences over random configurations
    bool grad_ok = true;
    double worst = 0.0;
    int tested = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        fnn::Rng rng(500 + trial);
        const int n = 1 + static_cast<int>(rng.next_u64() % 5);
        fnn::FourierNetworkParams p;
        for (int k = 0; k < n; ++k) {
            p.w.push_back(rng.normal(0.0, 2.0));
            p.phi.push_back(rng.uniform(-3.0, 3.0));
            p.lambda.push_back(rng.normal(0.0, 1.0));
        }
        p.phi0 = rng.normal(0.0, 0.5);
        fnn::LossSpec spec;
        spec.reg_norm = (trial % 2) ? fnn::RegNorm::L1 : fnn::RegNorm::L2;
        const auto points = fnn::sample_uniform(600 + trial, 32, -1.0, 1.0);
        std::vector<double> targets(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            targets[i] = cos_sin(points[i]);

        std::vector<double> grad;
        fnn::approximation_loss_grad(p, points, targets, spec, &grad);
        auto flat = p.flatten();
        fnn::FourierNetworkParams scratch = p;
        const double h = 1e-6;
        for (std::size_t i = 0; i < flat.size(); ++i) {
            auto plus = flat, minus = flat;
            plus[i] += h;
            minus[i] -= h;
            scratch.unflatten(plus);
            const double fp = fnn::approximation_loss(scratch, points, targets, spec);
            scratch.unflatten(minus);
            const double fm = fnn::approximation_loss(scratch, points, targets, spec);
            const double fd = (fp - fm) / (2.0 * h);
            const double rel =
                std::fabs(grad[i] - fd) / std::max({std::fabs(fd), std::fabs(grad[i]), 1.0});
            worst = std::max(worst, rel);
            if (rel > 1e-6) grad_ok = false;
            ++tested;
        }
    }

    // spectrum round trip: params -> spectrum -> params preserves the series
    bool round_ok = true;
    {
        fnn::FourierNetworkParams p;
        p.w = {1.0, 2.0, 4.0};
        p.phi = {fnn::kPi / 3.0, -1.0, 0.25};
        p.lambda = {1.5, -0.75, 2.0};
        p.phi0 = 0.4;
        const auto s = fnn::extract_spectrum(p, 4, 0.05, 1e-12).spectrum;
        const auto q = fnn::params_from_spectrum(s);
        for (double x = -1.0; x <= 1.0; x += 0.01)
            if (std::fabs(fnn::fnn_forward(p, x) - fnn::fnn_forward(q, x)) > 1e-12)
                round_ok = false;
    }

    // integer frequencies are the null space of the periodicity penalty
    bool null_ok = true;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        fnn::Rng rng(900 + trial);
        fnn::FourierNetworkParams p;
        for (int k = 0; k < 4; ++k) {
            p.w.push_back(std::round(rng.normal(0.0, 3.0)));
            p.phi.push_back(rng.uniform(-3.0, 3.0));
            p.lambda.push_back(rng.normal(0.0, 2.0));
        }
        p.phi0 = rng.normal(0.0, 1.0);
        fnn::LossSpec spec;
        spec.alpha1 = spec.alpha2 = 0.0;
        const auto points = fnn::sample_uniform(950 + trial, 64, -1.0, 1.0);
        double penalty = 0.0;
        for (double x : points) {
            const double u = fnn::fnn_forward(p, x);
            const double dp = fnn::fnn_forward(p, x + 2.0) - u;
            const double dm = fnn::fnn_forward(p, x - 2.0) - u;
            penalty += dp * dp + dm * dm;
        }
        if (penalty > 1e-18) null_ok = false;
    }

    // determinism: reruns are bit-identical
    fnn::LossSpec spec;
    fnn::TrainConfig config;
    config.max_iterations = 150;
    const auto [p1, r1] = fnn::train_fnn_approximation(cos_sin, 4, spec, config);
    const auto [p2, r2] = fnn::train_fnn_approximation(cos_sin, 4, spec, config);
    const bool det_ok = p1.flatten() == p2.flatten() && r1.loss_history == r2.loss_history;

    // moment identities under Monte Carlo: linearity of expectation and
    // variance of independent sums / products
    bool moment_ok = true;
    {
        const std::size_t n = 400000;
        fnn::Rng rng(4242);
        double sx = 0, sy = 0, sxy = 0, sx2 = 0, sy2 = 0, sx2y2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rng.normal(0.5, 1.5);
            const double y = rng.uniform(-1.0, 2.0);
            sx += x; sy += y; sxy += x * y;
            sx2 += x * x; sy2 += y * y; sx2y2 += x * x * y * y;
        }
        const double ex = sx / n, ey = sy / n, exy = sxy / n;
        const double ex2 = sx2 / n, ey2 = sy2 / n, ex2y2 = sx2y2 / n;
        if (std::fabs(exy - ex * ey) > 0.01) moment_ok = false;          // E[XY]=E[X]E[Y]
        if (std::fabs(ex2y2 - ex2 * ey2) > 0.05) moment_ok = false;      // E[X²Y²]=E[X²]E[Y²]
        const double var_sum = (ex2 - ex * ex) + (ey2 - ey * ey);
        double s = 0, s2 = 0;
        fnn::Rng rng2(4243);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = rng2.normal(0.5, 1.5) + rng2.uniform(-1.0, 2.0);
            s += v; s2 += v * v;
        }
        const double var_mc = s2 / n - (s / n) * (s / n);
        if (std::fabs(var_mc - var_sum) > 0.02) moment_ok = false;       // Var(X+Y)
    }

    const bool ok = grad_ok && round_ok && null_ok && det_ok && moment_ok;
    check(10, "property suites", ok,
          "gradient checks " + std::to_string(tested) + " (worst rel " + fmt(worst) +
              "), round trip " + (round_ok ? "ok" : "FAILED") + ", null space " +
              (null_ok ? "ok" : "FAILED") + ", determinism " +
              (det_ok ? "ok" : "FAILED") + ", moments " + (moment_ok ? "ok" : "FAILED"));
}

}  // namespace

int main() {
    criterion_initialization();
    criterion_baseline();  // also trains and stores the cos+sin model
    criterion_exact_trig();
    criterion_multi_frequency();
    criterion_x_squared();
    criterion_abs_x();
    criterion_extrapolation();
    criterion_poisson();
    criterion_heat();
    criterion_properties();

    std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
