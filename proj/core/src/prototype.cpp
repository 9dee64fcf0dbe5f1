#include "fbmc/prototype.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fbmc/waveform.hpp"

namespace fbmc {

namespace {

void normalize_energy(std::vector<double>& taps) {
    double e = 0.0;
    for (double t : taps) e += t * t;
    if (e <= 0.0) throw ConfigError("filter has zero energy");
    const double s = 1.0 / std::sqrt(e);
    for (double& t : taps) t *= s;
}

}  // namespace

void PrototypeFilter::validate() const {
    if (samples_per_symbol < 2 || samples_per_symbol % 2 != 0)
        throw ConfigError("samples_per_symbol must be even and >= 2");
    if (overlap_factor < 1) throw ConfigError("overlap factor must be >= 1");
    const std::size_t want =
        static_cast<std::size_t>(overlap_factor) * samples_per_symbol + 1;
    if (taps.size() != want)
        throw ConfigError("filter length " + std::to_string(taps.size()) +
                          " does not equal eta*M+1 = " + std::to_string(want));
    double e = 0.0;
    for (std::size_t k = 0; k < taps.size(); ++k) {
        e += taps[k] * taps[k];
        if (std::abs(taps[k] - taps[taps.size() - 1 - k]) > 1e-12)
            throw ConfigError("filter taps are not symmetric");
    }
    if (std::abs(e - 1.0) > 1e-12)
        throw ConfigError("filter taps are not unit energy");
}

PrototypeFilter phydyas_filter(int M, int eta) {
    if (eta != 4)
        throw ConfigError("phydyas_filter: unsupported overlap factor " +
                          std::to_string(eta) + " (supported: 4)");
    if (M < 2 || M % 2 != 0)
        throw ConfigError("phydyas_filter: M must be even and >= 2");

    // Frequency-sampling coefficients. H3 is tied to H1 and H2 so the
    // endpoint taps vanish exactly: 1 - 2*(H1 - H2 + H3) = 0.
    const double h1 = 0.971960;
    const double h2 = std::numbers::sqrt2 / 2.0;
    const double h3 = 0.5 + h2 - h1;

    const int period = eta * M;
    PrototypeFilter f;
    f.overlap_factor = eta;
    f.samples_per_symbol = M;
    f.taps.resize(static_cast<std::size_t>(period) + 1);
    for (int k = 0; k <= period; ++k) {
        const double w = 2.0 * std::numbers::pi * k / period;
        f.taps[static_cast<std::size_t>(k)] =
            1.0 - 2.0 * h1 * std::cos(w) + 2.0 * h2 * std::cos(2.0 * w) -
            2.0 * h3 * std::cos(3.0 * w);
    }
    normalize_energy(f.taps);
    return f;
}

PrototypeFilter load_filter_file(const std::string& path, int M) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open filter file: " + path);
    std::vector<double> taps;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size())
            throw ConfigError("filter file " + path + ": non-numeric line " +
                              std::to_string(line_no) + ": '" + tok + "'");
        taps.push_back(v);
    }
    if (taps.empty()) throw ConfigError("filter file " + path + " is empty");
    if (M < 2) throw ConfigError("load_filter_file: invalid M");
    const std::size_t span = taps.size() - 1;
    if (span % static_cast<std::size_t>(M) != 0)
        throw ConfigError("filter file " + path + ": length " +
                          std::to_string(taps.size()) +
                          " minus one is not divisible by M = " + std::to_string(M));
    PrototypeFilter f;
    f.samples_per_symbol = M;
    f.overlap_factor = static_cast<int>(span / static_cast<std::size_t>(M));
    f.taps = std::move(taps);
    normalize_energy(f.taps);
    return f;
}

void save_filter_file(const std::string& path, const PrototypeFilter& filter) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write filter file: " + path);
    out.precision(17);
    for (double t : filter.taps) out << t << '\n';
    if (!out) throw IoError("short write to filter file: " + path);
}

double orthogonality_report(const PrototypeFilter& filter,
                            const std::vector<int>& carriers, int n_slots) {
    if (carriers.empty() || n_slots < 1)
        throw ConfigError("orthogonality_report: empty probe grid");

    BurstConfig cfg;
    cfg.M = filter.samples_per_symbol;
    cfg.eta = filter.overlap_factor;
    cfg.N = n_slots;
    cfg.carriers = carriers;
    cfg.set_default_boundaries();

    double worst = 0.0;
    PamGrid probe(static_cast<Eigen::Index>(carriers.size()), n_slots);
    for (Eigen::Index mi = 0; mi < probe.carriers(); ++mi) {
        for (Eigen::Index n = 0; n < probe.slots(); ++n) {
            probe.values.setZero();
            probe.values(mi, n) = 1.0;
            const ComplexSignal s = synthesize(probe, filter, cfg);
            const PamGrid back = demodulate(s, filter, cfg);
            Eigen::MatrixXd err = back.values;
            err(mi, n) = 0.0;  // off-target responses only
            worst = std::max(worst, err.squaredNorm());
        }
    }
    return 10.0 * std::log10(std::max(worst, 1e-300));
}

double orthogonality_report(const PrototypeFilter& filter) {
    std::vector<int> all(static_cast<std::size_t>(filter.samples_per_symbol));
    for (std::size_t m = 0; m < all.size(); ++m) all[m] = static_cast<int>(m);
    return orthogonality_report(filter, all, 4 * filter.overlap_factor);
}

}  // namespace fbmc
