#pragma once

#include <vector>

#include "fbmc/types.hpp"

namespace fbmc {

/// Reports are clamped here instead of returning -inf.
inline constexpr double kDbFloor = -200.0;

struct EnergyReport {
    double xi1_dbc = kDbFloor;  // residual energy beyond the boundary
    double xi2_dbc = kDbFloor;  // cancellation energy inside the burst
    double reference_energy = 0.0;
};

/// Average burst energy per PAM symbol: ||s||^2 / (|carriers| * N).
double reference_energy(const PamGrid& grid, const ComplexSignal& signal,
                        const BurstConfig& config);

/// Reference for dBc figures: ||s||^2 / (2N), the untreated burst energy
/// per real-valued symbol interval. Equals reference_energy * |carriers|/2.
double dbc_reference(const ComplexSignal& untreated, const BurstConfig& config);

/// 10*log10(energy{k > k_e} / e_ref), floored at kDbFloor.
double tail_energy_dbc(const ComplexSignal& signal, long k_e, double e_ref);
/// Same for the ramp-up side: energy over k < k_b.
double head_energy_dbc(const ComplexSignal& signal, long k_b, double e_ref);

/// Mean-square error of the demodulated edge symbols in dB, normalized to
/// the mean symbol energy of grid_in. Edge positions are the first and
/// last `edge_depth` time slots across all carriers.
double edge_evm(const PamGrid& grid_in, const PamGrid& grid_out,
                const BurstConfig& config, int edge_depth);

/// Peak-to-average power over absolute indices [k_b, k_e].
double papr_db(const ComplexSignal& signal, long k_b, long k_e);

/// Fraction of values strictly above each threshold.
std::vector<double> papr_ccdf(const std::vector<double>& papr_values,
                              const std::vector<double>& thresholds_db);

struct PsdEstimate {
    std::vector<double> freq_subcarriers;  // shifted to [-M/2, M/2)
    std::vector<double> power_db;          // in-band mean = 0 dB
    int fft_size = 0;
};

/// Welch average over a continuous stream: Hann-windowed segments of
/// `fft_size` samples advanced by fft_size*(1-overlap). Normalized so the
/// mean over active-carrier bins is 0 dB. fft_size must be a power of two.
PsdEstimate psd_welch(const ComplexSignal& stream, const BurstConfig& config,
                      int fft_size, double overlap = 0.5);

/// Periodogram average over an ensemble of isolated bursts, each zero
/// padded to fft_size. Resolves the deep spectral nulls that segment
/// windowing smears; used for the out-of-band readouts.
PsdEstimate psd_burst_ensemble(const std::vector<ComplexSignal>& bursts,
                               const BurstConfig& config, int fft_size);

struct BerCount {
    std::uint64_t errors = 0;
    std::uint64_t total = 0;
    double ratio() const { return total ? static_cast<double>(errors) / total : 0.0; }
};

BerCount ber_count(const std::vector<std::uint8_t>& tx_bits,
                   const std::vector<std::uint8_t>& rx_bits);

}  // namespace fbmc
