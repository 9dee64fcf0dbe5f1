#include "fbmc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace fbmc {

namespace {

double to_db_floored(double ratio) {
    if (!(ratio > 0.0)) return kDbFloor;
    return std::max(kDbFloor, 10.0 * std::log10(ratio));
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Active-carrier bins and the shifted frequency axis shared by both
// estimators. Power is rotated into fftshift order so the axis ascends.
PsdEstimate finalize_psd(std::vector<double> power, const BurstConfig& config,
                         int fft_size) {
    const int bins_per_carrier = fft_size / config.M;
    double inband = 0.0;
    for (int c : config.carriers)
        inband += power[static_cast<std::size_t>(c) *
                        static_cast<std::size_t>(bins_per_carrier)];
    inband /= static_cast<double>(config.carriers.size());
    if (inband <= 0.0) throw NumericalError("psd: zero in-band power");

    PsdEstimate est;
    est.fft_size = fft_size;
    est.freq_subcarriers.resize(static_cast<std::size_t>(fft_size));
    est.power_db.resize(static_cast<std::size_t>(fft_size));
    for (int i = 0; i < fft_size; ++i) {
        const int src = (i + fft_size / 2) % fft_size;  // shifted order
        est.freq_subcarriers[static_cast<std::size_t>(i)] =
            (static_cast<double>(i) - fft_size / 2) * config.M / fft_size;
        est.power_db[static_cast<std::size_t>(i)] =
            to_db_floored(power[static_cast<std::size_t>(src)] / inband);
    }
    return est;
}

void check_psd_args(const BurstConfig& config, int fft_size) {
    if (!power_of_two(fft_size))
        throw ConfigError("psd: fft_size must be a power of two");
    if (fft_size % config.M != 0)
        throw ConfigError("psd: fft_size must be a multiple of M");
}

}  // namespace

double reference_energy(const PamGrid& grid, const ComplexSignal& signal,
                        const BurstConfig& config) {
    if (grid.carriers() == 0 || grid.slots() == 0)
        throw ConfigError("reference_energy: empty grid");
    (void)config;
    return signal.energy() /
           (static_cast<double>(grid.carriers()) * static_cast<double>(grid.slots()));
}

double dbc_reference(const ComplexSignal& untreated, const BurstConfig& config) {
    if (config.N < 1) throw ConfigError("dbc_reference: empty burst");
    return untreated.energy() / (2.0 * config.N);
}

double tail_energy_dbc(const ComplexSignal& signal, long k_e, double e_ref) {
    if (!(e_ref > 0.0)) throw ConfigError("tail_energy_dbc: e_ref must be > 0");
    return to_db_floored(signal.energy_range(k_e + 1, signal.end_index()) / e_ref);
}

double head_energy_dbc(const ComplexSignal& signal, long k_b, double e_ref) {
    if (!(e_ref > 0.0)) throw ConfigError("head_energy_dbc: e_ref must be > 0");
    return to_db_floored(signal.energy_range(signal.begin_index(), k_b - 1) / e_ref);
}

double edge_evm(const PamGrid& grid_in, const PamGrid& grid_out,
                const BurstConfig& config, int edge_depth) {
    if (grid_in.carriers() != grid_out.carriers() ||
        grid_in.slots() != grid_out.slots())
        throw ConfigError("edge_evm: grid dimensions differ");
    const auto n = static_cast<int>(grid_in.slots());
    if (edge_depth < 1 || 2 * edge_depth > n)
        throw ConfigError("edge_evm: edge_depth must be in [1, N/2]");
    (void)config;

    const double sym_energy = grid_in.values.squaredNorm() /
                              static_cast<double>(grid_in.values.size());
    if (!(sym_energy > 0.0)) throw ConfigError("edge_evm: zero reference grid");

    double mse = 0.0;
    std::size_t count = 0;
    auto add_column = [&](int slot) {
        for (Eigen::Index mi = 0; mi < grid_in.carriers(); ++mi) {
            const double e = grid_out.values(mi, slot) - grid_in.values(mi, slot);
            mse += e * e;
            ++count;
        }
    };
    for (int d = 0; d < edge_depth; ++d) {
        add_column(d);
        add_column(n - 1 - d);
    }
    return to_db_floored(mse / static_cast<double>(count) / sym_energy);
}

double papr_db(const ComplexSignal& signal, long k_b, long k_e) {
    double peak = 0.0, sum = 0.0;
    std::size_t count = 0;
    for (long k = std::max(k_b, signal.begin_index());
         k <= std::min(k_e, signal.end_index()); ++k) {
        const double p = std::norm(signal.at(k));
        peak = std::max(peak, p);
        sum += p;
        ++count;
    }
    if (count == 0 || !(sum > 0.0))
        throw ConfigError("papr_db: zero-energy window");
    return 10.0 * std::log10(peak / (sum / static_cast<double>(count)));
}

std::vector<double> papr_ccdf(const std::vector<double>& papr_values,
                              const std::vector<double>& thresholds_db) {
    std::vector<double> ccdf(thresholds_db.size(), 0.0);
    if (papr_values.empty()) return ccdf;
    for (std::size_t t = 0; t < thresholds_db.size(); ++t) {
        std::size_t above = 0;
        for (double v : papr_values)
            if (v > thresholds_db[t]) ++above;
        ccdf[t] = static_cast<double>(above) / papr_values.size();
    }
    return ccdf;
}

PsdEstimate psd_welch(const ComplexSignal& stream, const BurstConfig& config,
                      int fft_size, double overlap) {
    check_psd_args(config, fft_size);
    if (!(overlap >= 0.0 && overlap < 1.0))
        throw ConfigError("psd: overlap must be in [0, 1)");
    const auto seg = static_cast<std::size_t>(fft_size);
    if (stream.samples.size() < seg)
        throw ConfigError("psd: stream shorter than one segment");
    const auto hop = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(fft_size * (1.0 - overlap))));

    std::vector<double> window(seg);
    double win_energy = 0.0;
    for (std::size_t i = 0; i < seg; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (seg - 1));
        win_energy += window[i] * window[i];
    }

    std::vector<double> power(seg, 0.0);
    std::vector<cplx> in(seg), out(seg);
    std::size_t segments = 0;
    for (std::size_t start = 0; start + seg <= stream.samples.size();
         start += hop) {
        for (std::size_t i = 0; i < seg; ++i)
            in[i] = stream.samples[start + i] * window[i];
        fft_forward(in, out);
        for (std::size_t i = 0; i < seg; ++i) power[i] += std::norm(out[i]);
        ++segments;
    }
    const double scale = 1.0 / (static_cast<double>(segments) * win_energy);
    for (double& p : power) p *= scale;
    return finalize_psd(std::move(power), config, fft_size);
}

PsdEstimate psd_burst_ensemble(const std::vector<ComplexSignal>& bursts,
                               const BurstConfig& config, int fft_size) {
    check_psd_args(config, fft_size);
    if (bursts.empty()) throw ConfigError("psd: empty burst ensemble");
    const auto n = static_cast<std::size_t>(fft_size);
    std::vector<double> power(n, 0.0);
    std::vector<cplx> in(n), out(n);
    for (const ComplexSignal& b : bursts) {
        if (b.samples.size() > n)
            throw ConfigError("psd: burst longer than fft_size");
        std::fill(in.begin(), in.end(), cplx{});
        std::copy(b.samples.begin(), b.samples.end(), in.begin());
        fft_forward(in, out);
        for (std::size_t i = 0; i < n; ++i) power[i] += std::norm(out[i]);
    }
    for (double& p : power) p /= static_cast<double>(bursts.size());
    return finalize_psd(std::move(power), config, fft_size);
}

BerCount ber_count(const std::vector<std::uint8_t>& tx_bits,
                   const std::vector<std::uint8_t>& rx_bits) {
    if (tx_bits.size() != rx_bits.size())
        throw ConfigError("ber_count: bit stream lengths differ");
    BerCount c;
    c.total = tx_bits.size();
    for (std::size_t i = 0; i < tx_bits.size(); ++i)
        if ((tx_bits[i] ^ rx_bits[i]) & 1) ++c.errors;
    return c;
}

}  // namespace fbmc
