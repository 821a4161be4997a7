// Command-line front end: fit targets, extract spectra, solve the periodic
// Poisson and heat problems, compare against the tanh baseline, and dump the
// initialization statistics. Every command is deterministic given its config
// and seed; artifact files are byte-identical across reruns.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fnn/fnn.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitIoError = 3;

// Flat key=value configuration: file lines plus command-line overrides.
class Config {
public:
    void load_file(const std::string& path) {
        std::istringstream in(fnn::read_text_file(path));
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                if (a == std::string::npos) return std::string();
                const auto b = s.find_last_not_of(" \t\r");
                return s.substr(a, b - a + 1);
            };
            if (trim(line).empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": expected key=value");
            set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }

    void apply_overrides(const std::vector<std::string>& overrides) {
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("override '" + kv + "': expected key=value");
            set(kv.substr(0, eq), kv.substr(eq + 1));
        }
    }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) {
        used_[key] = has(key) ? values_.at(key) : fallback;
        return used_[key];
    }

    double get_double(const std::string& key, double fallback) {
        if (!has(key)) {
            used_[key] = fnn::format_double(fallback);
            return fallback;
        }
        used_[key] = values_.at(key);
        try {
            return std::stod(values_.at(key));
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "': not a number");
        }
    }

    long get_int(const std::string& key, long fallback) {
        if (!has(key)) {
            used_[key] = std::to_string(fallback);
            return fallback;
        }
        used_[key] = values_.at(key);
        try {
            return std::stol(values_.at(key));
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "': not an integer");
        }
    }

    bool get_bool(const std::string& key, bool fallback) {
        const auto s = get_string(key, fallback ? "true" : "false");
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw std::invalid_argument("config key '" + key + "': not a boolean");
    }

    // Every key the command consumed, with its resolved value; rerunning from
    // this file reproduces the outputs.
    std::string effective() const {
        std::string out;
        for (const auto& [k, v] : used_) out += k + " = " + v + "\n";
        return out;
    }

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> used_;
};

struct CommonArgs {
    std::string config_path;
    std::optional<long> seed;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "flat key=value config file");
    cmd->add_option("--seed", args.seed, "random seed (overrides config and FNN_SEED)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("overrides", args.overrides, "key=value config overrides");
}

Config make_config(const CommonArgs& args) {
    Config cfg;
    if (!args.config_path.empty()) cfg.load_file(args.config_path);
    cfg.apply_overrides(args.overrides);
    if (args.seed) cfg.set("seed", std::to_string(*args.seed));
    if (!cfg.has("seed")) {
        if (const char* env = std::getenv("FNN_SEED")) cfg.set("seed", env);
    }
    return cfg;
}

fnn::TrainConfig train_config(Config& cfg) {
    fnn::TrainConfig tc;
    tc.max_iterations = static_cast<int>(cfg.get_int("max_iterations", tc.max_iterations));
    tc.loss_tolerance = cfg.get_double("loss_tolerance", tc.loss_tolerance);
    tc.grad_tolerance = cfg.get_double("grad_tolerance", tc.grad_tolerance);
    const auto opt = cfg.get_string("optimizer", "quasi-newton");
    if (opt == "quasi-newton")
        tc.optimizer = fnn::Optimizer::QuasiNewton;
    else if (opt == "adam")
        tc.optimizer = fnn::Optimizer::Adam;
    else if (opt == "gradient-descent")
        tc.optimizer = fnn::Optimizer::GradientDescent;
    else
        throw std::invalid_argument("unknown optimizer '" + opt + "'");
    tc.learning_rate = cfg.get_double("learning_rate", tc.learning_rate);
    tc.sample_count = static_cast<int>(cfg.get_int("sample_count", tc.sample_count));
    tc.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    tc.init_m = cfg.get_double("init_m", tc.init_m);
    tc.resample = cfg.get_bool("resample", tc.resample);
    tc.restarts = static_cast<int>(cfg.get_int("restarts", tc.restarts));
    tc.validate();
    return tc;
}

fnn::LossSpec loss_spec(Config& cfg) {
    fnn::LossSpec spec;
    spec.alpha1 = cfg.get_double("alpha1", spec.alpha1);
    spec.alpha2 = cfg.get_double("alpha2", spec.alpha2);
    spec.alpha3 = cfg.get_double("alpha3", spec.alpha3);
    spec.alpha4 = cfg.get_double("alpha4", spec.alpha4);
    spec.alpha5 = cfg.get_double("alpha5", spec.alpha5);
    spec.alpha6 = cfg.get_double("alpha6", spec.alpha6);
    const auto norm = cfg.get_string("reg_norm", "l2");
    if (norm == "l2")
        spec.reg_norm = fnn::RegNorm::L2;
    else if (norm == "l1")
        spec.reg_norm = fnn::RegNorm::L1;
    else
        throw std::invalid_argument("reg_norm must be l1 or l2");
    spec.period = cfg.get_double("period", spec.period);
    spec.validate();
    return spec;
}

// Builtin targets are the 2-periodic extensions the experiments use; anything
// else is parsed as an expression in x.
fnn::ScalarFn resolve_target(const std::string& id) {
    auto periodic = [](double x) { return x - 2.0 * std::round(x / 2.0); };
    if (id == "cos-sin")
        return [](double x) { return std::cos(fnn::kPi * x) + std::sin(fnn::kPi * x); };
    if (id == "multi-freq")
        return [](double x) {
            return 8.0 * std::cos(4.0 * fnn::kPi * x) + std::sin(2.0 * fnn::kPi * x) +
                   std::sin(fnn::kPi * x);
        };
    if (id == "x-squared")
        return [periodic](double x) {
            const double y = periodic(x);
            return y * y;
        };
    if (id == "abs-x")
        return [periodic](double x) { return std::fabs(periodic(x)); };
    const auto expr = fnn::parse_expression(id);
    return [expr](double x) { return expr->evaluate(x); };
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

std::string comparison_csv(const fnn::ScalarFn& target,
                           const fnn::FourierNetworkParams& params, double lo,
                           double hi, int n) {
    std::string out = "x,target,fnn\n";
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        out += fnn::format_double(x) + "," + fnn::format_double(target(x)) + "," +
               fnn::format_double(fnn::fnn_forward(params, x)) + "\n";
    }
    return out;
}

void maybe_write_svg(Config& cfg, const std::string& dir, const std::string& name,
                     const std::vector<fnn::SvgSeries>& series, const std::string& title,
                     bool log_y = false) {
    if (!cfg.get_bool("svg", false)) return;
    fnn::write_text_file(join(dir, name), fnn::svg_line_plot(series, title, log_y));
}

// Spectral reference solution of the periodic problems, from the quadrature
// coefficients of the data. Used to build error grids for arbitrary forcing.
fnn::FourierSpectrum poisson_reference_spectrum(const fnn::ScalarFn& forcing,
                                                int n_modes, double period) {
    auto f = fnn::quadrature_coefficients(forcing, n_modes, period);
    fnn::FourierSpectrum u = f;
    u.a0 = 0.0;  // zero-mean gauge
    const double om = 2.0 * fnn::kPi / period;
    for (std::size_t n = 0; n < u.modes(); ++n) {
        const double k2 = om * om * static_cast<double>((n + 1) * (n + 1));
        u.a[n] /= k2;
        u.b[n] /= k2;
    }
    return u;
}

int cmd_fit(const CommonArgs& args) {
    Config cfg = make_config(args);
    const auto target_id = cfg.get_string("target", "cos-sin");
    const auto target = resolve_target(target_id);
    const int hidden = static_cast<int>(cfg.get_int("hidden_count", 4));
    auto tc = train_config(cfg);
    auto spec = loss_spec(cfg);
    const double lo = cfg.get_double("domain_lo", -1.0);
    const double hi = cfg.get_double("domain_hi", 1.0);
    const double extrap_lo = cfg.get_double("extrap_lo", -3.0);
    const double extrap_hi = cfg.get_double("extrap_hi", 3.0);
    const int n_modes = static_cast<int>(cfg.get_int("n_modes", 4));

    ensure_out_dir(args.out_dir);
    const auto [params, report] = fnn::train_fnn_approximation(target, hidden, spec, tc, lo, hi);

    fnn::write_text_file(join(args.out_dir, "model.json"),
                         fnn::model_to_json(params).dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "report.json"),
                         fnn::report_to_json(report).dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "loss_history.csv"),
                         fnn::loss_history_csv(report.loss_history));
    fnn::write_text_file(join(args.out_dir, "comparison.csv"),
                         comparison_csv(target, params, extrap_lo, extrap_hi, 601));
    const auto spectrum = fnn::extract_spectrum(params, n_modes).spectrum;
    fnn::write_text_file(join(args.out_dir, "spectrum.csv"), fnn::spectrum_csv(spectrum));
    fnn::write_text_file(join(args.out_dir, "effective_config.txt"), cfg.effective());

    fnn::SvgSeries st{"target", "#333333", {}, {}}, sf{"fnn", "#d62728", {}, {}};
    for (int i = 0; i < 601; ++i) {
        const double x = extrap_lo + (extrap_hi - extrap_lo) * i / 600.0;
        st.x.push_back(x);
        st.y.push_back(target(x));
        sf.x.push_back(x);
        sf.y.push_back(fnn::fnn_forward(params, x));
    }
    maybe_write_svg(cfg, args.out_dir, "comparison.svg", {st, sf}, "fit: " + target_id);

    std::cout << "fit " << target_id << ": loss " << report.final_loss << " after "
              << report.iterations_run << " iterations"
              << (report.converged ? "" : " (not converged)") << "\n";
    return kExitOk;
}

int cmd_spectrum(const CommonArgs& args) {
    Config cfg = make_config(args);
    const auto model_path = cfg.get_string("model", "model.json");
    const auto reference_id = cfg.get_string("reference", "");
    const int n_modes = static_cast<int>(cfg.get_int("n_modes", 4));
    const double freq_tol = cfg.get_double("freq_tol", 0.05);
    const double amp_tol = cfg.get_double("amp_tol", 1e-3);
    const int grid_size = static_cast<int>(cfg.get_int("grid_size", 4097));

    const auto params = fnn::model_from_json(fnn::json::parse(fnn::read_text_file(model_path)));
    const auto extraction = fnn::extract_spectrum(params, n_modes, freq_tol, amp_tol);

    ensure_out_dir(args.out_dir);
    fnn::write_text_file(join(args.out_dir, "spectrum.csv"),
                         fnn::spectrum_csv(extraction.spectrum));

    for (std::size_t k : extraction.non_integer_nodes)
        std::cerr << "warning: node " << k << " has significant amplitude but "
                  << "non-integer frequency " << params.w[k] << "\n";

    if (!reference_id.empty()) {
        const auto target = resolve_target(reference_id);
        const auto ref = fnn::quadrature_coefficients(target, n_modes, params.period, grid_size);
        const auto err = fnn::spectrum_error(extraction.spectrum, ref);
        std::string table = "n,fnn_a,fourier_a,fnn_b,fourier_b,abs_error\n";
        table += "0," + fnn::format_double(0.5 * extraction.spectrum.a0) + "," +
                 fnn::format_double(0.5 * ref.a0) + ",0,0," +
                 fnn::format_double(err.a0_error) + "\n";
        for (std::size_t n = 0; n < err.a_error.size(); ++n) {
            table += std::to_string(n + 1) + "," +
                     fnn::format_double(extraction.spectrum.a[n]) + "," +
                     fnn::format_double(ref.a[n]) + "," +
                     fnn::format_double(extraction.spectrum.b[n]) + "," +
                     fnn::format_double(ref.b[n]) + "," +
                     fnn::format_double(std::max(err.a_error[n], err.b_error[n])) + "\n";
        }
        fnn::write_text_file(join(args.out_dir, "coefficients_comparison.csv"), table);
        std::cout << "spectrum: max coefficient error vs " << reference_id << " = "
                  << err.max_error << "\n";
    } else {
        std::cout << "spectrum: wrote " << extraction.spectrum.modes() << " modes\n";
    }
    fnn::write_text_file(join(args.out_dir, "effective_config.txt"), cfg.effective());
    return kExitOk;
}

int cmd_solve_poisson(const CommonArgs& args) {
    Config cfg = make_config(args);
    const auto forcing_id = cfg.get_string("forcing", "cos(pi*x)");
    const auto forcing = resolve_target(forcing_id);
    const int hidden = static_cast<int>(cfg.get_int("hidden_count", 4));
    auto tc = train_config(cfg);
    auto spec = loss_spec(cfg);
    const int ref_modes = static_cast<int>(cfg.get_int("reference_modes", 16));

    fnn::PdeProblem problem;
    problem.kind = fnn::PdeKind::Poisson1D;
    problem.x_lo = cfg.get_double("domain_lo", -1.0);
    problem.x_hi = cfg.get_double("domain_hi", 1.0);
    problem.forcing = forcing;

    ensure_out_dir(args.out_dir);
    const auto [params, report] = fnn::solve_poisson(problem, hidden, spec, tc);

    const auto ref = poisson_reference_spectrum(forcing, ref_modes, problem.period());
    // gauge alignment: the additive constant is not determined by the
    // residual, so compare after removing the mean difference
    const int n_grid = 201;
    double offset = 0.0;
    for (int i = 0; i < n_grid; ++i) {
        const double x = problem.x_lo + problem.period() * i / (n_grid - 1);
        offset += (fnn::fnn_forward(params, x) - fnn::evaluate_series(ref, x)) / n_grid;
    }
    std::string grid_csv = "x,u_hat,u_exact,error\n";
    double sup = 0.0, sq = 0.0;
    for (int i = 0; i < n_grid; ++i) {
        const double x = problem.x_lo + problem.period() * i / (n_grid - 1);
        const double u_hat = fnn::fnn_forward(params, x) - offset;
        const double u_ref = fnn::evaluate_series(ref, x);
        const double e = std::fabs(u_hat - u_ref);
        sup = std::max(sup, e);
        sq += e * e / n_grid;
        grid_csv += fnn::format_double(x) + "," + fnn::format_double(u_hat) + "," +
                    fnn::format_double(u_ref) + "," + fnn::format_double(e) + "\n";
    }

    fnn::write_text_file(join(args.out_dir, "model.json"),
                         fnn::model_to_json(params).dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "report.json"),
                         fnn::report_to_json(report).dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "loss_history.csv"),
                         fnn::loss_history_csv(report.loss_history));
    fnn::write_text_file(join(args.out_dir, "error_grid.csv"), grid_csv);
    fnn::json summary{{"sup_error", sup},
                      {"l2_error", std::sqrt(sq)},
                      {"final_loss", report.final_loss},
                      {"iterations_run", report.iterations_run},
                      {"converged", report.converged}};
    fnn::write_text_file(join(args.out_dir, "summary.json"), summary.dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "effective_config.txt"), cfg.effective());

    std::cout << "poisson: sup error " << sup << ", loss " << report.final_loss
              << " after " << report.iterations_run << " iterations\n";
    return kExitOk;
}

int cmd_solve_heat(const CommonArgs& args) {
    Config cfg = make_config(args);
    // the joint space/time training needs a larger iteration budget than the
    // plain fits; still well inside the runtime budget
    if (!cfg.has("max_iterations")) cfg.set("max_iterations", "60000");
    const auto u0_id = cfg.get_string("initial_condition", "sin(pi*x)");
    const auto u0 = resolve_target(u0_id);
    const int space_hidden = static_cast<int>(cfg.get_int("space_hidden", 4));
    const int time_hidden = static_cast<int>(cfg.get_int("time_hidden", 16));
    const int x_samples = static_cast<int>(cfg.get_int("x_samples", 64));
    const int t_samples = static_cast<int>(cfg.get_int("t_samples", 64));
    const int ref_modes = static_cast<int>(cfg.get_int("reference_modes", 16));
    auto tc = train_config(cfg);
    auto spec = loss_spec(cfg);

    fnn::PdeProblem problem;
    problem.kind = fnn::PdeKind::Heat1D;
    problem.x_lo = cfg.get_double("domain_lo", -1.0);
    problem.x_hi = cfg.get_double("domain_hi", 1.0);
    problem.time_horizon = cfg.get_double("time_horizon", 4.0);
    problem.initial_condition = u0;

    ensure_out_dir(args.out_dir);
    const auto [solution, report] =
        fnn::solve_heat(problem, space_hidden, {1, time_hidden, 1}, spec, tc, x_samples,
                        t_samples);

    // spectral reference: each mode of u0 decays with its own rate
    const auto u0_spec = fnn::quadrature_coefficients(u0, ref_modes, problem.period());
    const double om = 2.0 * fnn::kPi / problem.period();
    auto reference = [&](double x, double t) {
        double v = 0.5 * u0_spec.a0;
        for (std::size_t n = 0; n < u0_spec.modes(); ++n) {
            const double k = om * static_cast<double>(n + 1);
            v += (u0_spec.a[n] * std::cos(k * x) + u0_spec.b[n] * std::sin(k * x)) *
                 std::exp(-k * k * t);
        }
        return v;
    };

    auto write_grid = [&](double t_hi, int nx, int nt, const std::string& name) {
        std::string csv = "x,t,u_hat,u_exact,error\n";
        double sup = 0.0, sq = 0.0;
        for (int j = 0; j < nt; ++j) {
            const double t = t_hi * j / (nt - 1);
            for (int i = 0; i < nx; ++i) {
                const double x = problem.x_lo + problem.period() * i / (nx - 1);
                const double u_hat = solution.evaluate(x, t);
                const double u_ref = reference(x, t);
                const double e = std::fabs(u_hat - u_ref);
                sup = std::max(sup, e);
                sq += e * e / (static_cast<double>(nx) * nt);
                csv += fnn::format_double(x) + "," + fnn::format_double(t) + "," +
                       fnn::format_double(u_hat) + "," + fnn::format_double(u_ref) + "," +
                       fnn::format_double(e) + "\n";
            }
        }
        fnn::write_text_file(join(args.out_dir, name), csv);
        return std::pair{sup, std::sqrt(sq)};
    };
    const auto [sup01, l201] = write_grid(std::min(1.0, problem.time_horizon), 101, 101,
                                          "error_grid_t01.csv");
    const auto [sup_full, l2_full] =
        write_grid(problem.time_horizon, 101, 101, "error_grid.csv");

    fnn::write_text_file(join(args.out_dir, "space_model.json"),
                         fnn::model_to_json(solution.space_net).dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "time_model.json"),
                         fnn::dense_to_json(solution.time_net).dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "report.json"),
                         fnn::report_to_json(report).dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "loss_history.csv"),
                         fnn::loss_history_csv(report.loss_history));
    fnn::json summary{{"sup_error_t01", sup01},
                      {"l2_error_t01", l201},
                      {"sup_error", sup_full},
                      {"l2_error", l2_full},
                      {"final_loss", report.final_loss},
                      {"iterations_run", report.iterations_run},
                      {"converged", report.converged}};
    fnn::write_text_file(join(args.out_dir, "summary.json"), summary.dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "effective_config.txt"), cfg.effective());

    std::cout << "heat: sup error " << sup01 << " on t<=1, " << sup_full
              << " on the full horizon, loss " << report.final_loss << "\n";
    return kExitOk;
}

int cmd_compare_baseline(const CommonArgs& args) {
    Config cfg = make_config(args);
    const auto target_id = cfg.get_string("target", "cos-sin");
    const auto target = resolve_target(target_id);
    const int hidden = static_cast<int>(cfg.get_int("hidden_count", 4));
    const int baseline_hidden = static_cast<int>(cfg.get_int("baseline_hidden", 10));
    auto tc = train_config(cfg);
    auto spec = loss_spec(cfg);
    const double lo = cfg.get_double("domain_lo", -1.0);
    const double hi = cfg.get_double("domain_hi", 1.0);
    const double extrap_lo = cfg.get_double("extrap_lo", -3.0);
    const double extrap_hi = cfg.get_double("extrap_hi", 3.0);

    ensure_out_dir(args.out_dir);
    const auto [fnn_params, fnn_report] =
        fnn::train_fnn_approximation(target, hidden, spec, tc, lo, hi);
    const auto [tanh_params, tanh_report] =
        fnn::train_dense_approximation(target, {1, baseline_hidden, 1}, spec, tc, lo, hi);

    std::string loss_csv = "iteration,fnn_loss,tanh_loss\n";
    const std::size_t rows =
        std::max(fnn_report.loss_history.size(), tanh_report.loss_history.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const double lf = fnn_report.loss_history[std::min(i, fnn_report.loss_history.size() - 1)];
        const double lt =
            tanh_report.loss_history[std::min(i, tanh_report.loss_history.size() - 1)];
        loss_csv += std::to_string(i) + "," + fnn::format_double(lf) + "," +
                    fnn::format_double(lt) + "\n";
    }
    fnn::write_text_file(join(args.out_dir, "loss_compare.csv"), loss_csv);

    std::string extrap = "x,target,fnn,tanh\n";
    double fnn_err_in = 0.0, fnn_err_out = 0.0, tanh_err_in = 0.0, tanh_err_out = 0.0;
    for (int i = 0; i < 601; ++i) {
        const double x = extrap_lo + (extrap_hi - extrap_lo) * i / 600.0;
        const double t = target(x);
        const double yf = fnn::fnn_forward(fnn_params, x);
        const double yt = fnn::dense_forward(tanh_params, x);
        extrap += fnn::format_double(x) + "," + fnn::format_double(t) + "," +
                  fnn::format_double(yf) + "," + fnn::format_double(yt) + "\n";
        if (x >= lo && x <= hi) {
            fnn_err_in = std::max(fnn_err_in, std::fabs(yf - t));
            tanh_err_in = std::max(tanh_err_in, std::fabs(yt - t));
        }
        if (x >= 1.0 && x <= 3.0) {
            fnn_err_out = std::max(fnn_err_out, std::fabs(yf - t));
            tanh_err_out = std::max(tanh_err_out, std::fabs(yt - t));
        }
    }
    fnn::write_text_file(join(args.out_dir, "extrapolation.csv"), extrap);

    fnn::write_text_file(join(args.out_dir, "fnn_model.json"),
                         fnn::model_to_json(fnn_params).dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "tanh_model.json"),
                         fnn::dense_to_json(tanh_params).dump(2) + "\n");
    fnn::json summary{{"fnn_final_loss", fnn_report.final_loss},
                      {"tanh_final_loss", tanh_report.final_loss},
                      {"fnn_iterations", fnn_report.iterations_run},
                      {"tanh_iterations", tanh_report.iterations_run},
                      {"fnn_max_error_train", fnn_err_in},
                      {"tanh_max_error_train", tanh_err_in},
                      {"fnn_max_error_extrap", fnn_err_out},
                      {"tanh_max_error_extrap", tanh_err_out}};
    fnn::write_text_file(join(args.out_dir, "summary.json"), summary.dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "effective_config.txt"), cfg.effective());

    std::cout << "compare " << target_id << ": fnn loss " << fnn_report.final_loss
              << " vs tanh loss " << tanh_report.final_loss << "\n";
    return kExitOk;
}

int cmd_init_stats(const CommonArgs& args) {
    Config cfg = make_config(args);
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    const std::size_t mc_samples =
        static_cast<std::size_t>(cfg.get_int("mc_samples", 1000000));

    ensure_out_dir(args.out_dir);
    const double root = fnn::solve_variance_match(1.0 / 3.0, 0.1, 2.0);

    std::string csv = "m,mean,variance,mc_mean,mc_variance,v_n4,v_n8,v_n16\n";
    const std::vector<double> ms = {0.5, root, 1.0, 2.0, std::sqrt(5.0)};
    for (double m : ms) {
        fnn::Rng rng(seed);
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < mc_samples; ++i) {
            const double x = rng.uniform(-1.0, 1.0);
            const double w = rng.normal(0.0, m);
            const double v = std::cos(fnn::kPi * w * x);
            s1 += v;
            s2 += v * v;
        }
        const double mc_mean = s1 / mc_samples;
        const double mc_var = s2 / mc_samples - mc_mean * mc_mean;
        csv += fnn::format_double(m) + "," + fnn::format_double(fnn::hidden_mean(m)) + "," +
               fnn::format_double(fnn::hidden_variance(m)) + "," +
               fnn::format_double(mc_mean) + "," + fnn::format_double(mc_var) + "," +
               fnn::format_double(fnn::output_weight_std(m, 4)) + "," +
               fnn::format_double(fnn::output_weight_std(m, 8)) + "," +
               fnn::format_double(fnn::output_weight_std(m, 16)) + "\n";
    }
    fnn::write_text_file(join(args.out_dir, "init_stats.csv"), csv);
    fnn::json summary{{"variance_match_root", root},
                      {"variance_at_sqrt5", fnn::hidden_variance(std::sqrt(5.0))}};
    fnn::write_text_file(join(args.out_dir, "summary.json"), summary.dump(2) + "\n");
    fnn::write_text_file(join(args.out_dir, "effective_config.txt"), cfg.effective());

    std::cout << "init-stats: variance-matching root m = " << root
              << ", variance at sqrt(5) = " << fnn::hidden_variance(std::sqrt(5.0)) << "\n";
    std::cout << csv;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier neural networks: periodic function approximation, "
                 "coefficient recovery and periodic differential equations"};
    app.require_subcommand(1);

    CommonArgs fit_args, spectrum_args, poisson_args, heat_args, compare_args, stats_args;
    auto* fit = app.add_subcommand("fit", "train the cosine network on a target function");
    add_common(fit, fit_args);
    auto* spectrum =
        app.add_subcommand("spectrum", "extract Fourier coefficients from a saved model");
    add_common(spectrum, spectrum_args);
    auto* poisson =
        app.add_subcommand("solve-poisson", "solve -u'' = f with periodic boundary");
    add_common(poisson, poisson_args);
    auto* heat = app.add_subcommand("solve-heat", "solve the periodic heat equation");
    add_common(heat, heat_args);
    auto* compare =
        app.add_subcommand("compare-baseline", "train the cosine and tanh networks side by side");
    add_common(compare, compare_args);
    auto* stats =
        app.add_subcommand("init-stats", "tabulate the initialization statistics");
    add_common(stats, stats_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (fit->parsed()) return cmd_fit(fit_args);
        if (spectrum->parsed()) return cmd_spectrum(spectrum_args);
        if (poisson->parsed()) return cmd_solve_poisson(poisson_args);
        if (heat->parsed()) return cmd_solve_heat(heat_args);
        if (compare->parsed()) return cmd_compare_baseline(compare_args);
        if (stats->parsed()) return cmd_init_stats(stats_args);
    } catch (const fnn::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const fnn::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    return kExitConfigError;
}
