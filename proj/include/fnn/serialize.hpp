#pragma once

// File formats used by the CLI: model JSON, report JSON, and the CSV data
// files (loss history, spectra, comparison and error grids). All doubles are
// written with 17 significant digits so a reload reproduces the value exactly.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fnn/fourier.hpp"
#include "fnn/model.hpp"
#include "fnn/optimize.hpp"

namespace fnn {

using json = nlohmann::json;

inline json model_to_json(const FourierNetworkParams& p) {
    return json{{"period", p.period},
                {"w", p.w},
                {"phi", p.phi},
                {"lambda", p.lambda},
                {"phi0", p.phi0}};
}

inline FourierNetworkParams model_from_json(const json& j) {
    FourierNetworkParams p;
    p.period = j.at("period").get<double>();
    p.w = j.at("w").get<std::vector<double>>();
    p.phi = j.at("phi").get<std::vector<double>>();
    p.lambda = j.at("lambda").get<std::vector<double>>();
    p.phi0 = j.at("phi0").get<double>();
    p.validate();
    return p;
}

inline json dense_to_json(const DenseNetworkParams& p) {
    return json{{"layer_sizes", p.layer_sizes},
                {"weights", p.weights},
                {"biases", p.biases}};
}

inline DenseNetworkParams dense_from_json(const json& j) {
    DenseNetworkParams p;
    p.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
    p.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    p.biases = j.at("biases").get<std::vector<std::vector<double>>>();
    p.validate();
    return p;
}

// wall time is intentionally left out: artifact files must be byte-identical
// across reruns with the same seed.
inline json report_to_json(const TrainReport& r) {
    return json{{"iterations_run", r.iterations_run},
                {"final_loss", r.final_loss},
                {"converged", r.converged},
                {"final_params", r.final_x}};
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string loss_history_csv(const std::vector<double>& history) {
    std::string out = "iteration,loss\n";
    for (std::size_t i = 0; i < history.size(); ++i)
        out += std::to_string(i) + "," + format_double(history[i]) + "\n";
    return out;
}

// n = 0 carries the stored a0 (series contribution a0/2); c and psi are the
// reduced form of each mode.
inline std::string spectrum_csv(const FourierSpectrum& s) {
    const auto r = reduced_form(s);
    std::string out = "n,a_n,b_n,c_n,psi_n\n";
    out += "0," + format_double(s.a0) + ",0,0,0\n";
    for (std::size_t n = 0; n < s.modes(); ++n)
        out += std::to_string(n + 1) + "," + format_double(s.a[n]) + "," +
               format_double(s.b[n]) + "," + format_double(r.c[n]) + "," +
               format_double(r.psi[n]) + "\n";
    return out;
}

}  // namespace fnn
