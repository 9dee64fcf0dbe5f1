#pragma once

#include <string>
#include <vector>

#include "fbmc/types.hpp"

namespace fbmc {

/// Prototype filter g(k), k = 0..eta*M, unit energy, symmetric.
struct PrototypeFilter {
    std::vector<double> taps;
    int overlap_factor = 0;      // eta
    int samples_per_symbol = 0;  // M

    int length() const { return static_cast<int>(taps.size()); }
    void validate() const;  // length/symmetry/energy invariants
};

/// Frequency-sampling prototype for overlap factor 4.
PrototypeFilter phydyas_filter(int M, int eta);

/// Reads one tap per line (plain decimal text) and normalizes to unit
/// energy. eta is inferred from (line count - 1) / M.
PrototypeFilter load_filter_file(const std::string& path, int M);

void save_filter_file(const std::string& path, const PrototypeFilter& filter);

/// Worst-case round-trip interference power in dB over a probe grid:
/// each unit impulse is modulated, demodulated noise-free, and the
/// off-target response energy is summed; the max over probe positions is
/// returned. An empty probe grid is an error.
double orthogonality_report(const PrototypeFilter& filter,
                            const std::vector<int>& carriers, int n_slots);

/// Probes every carrier over 4*eta slots.
double orthogonality_report(const PrototypeFilter& filter);

}  // namespace fbmc
