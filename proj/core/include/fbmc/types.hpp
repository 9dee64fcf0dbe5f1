#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fbmc {

using cplx = std::complex<double>;

/// Bad parameters, malformed config files, inconsistent dimensions.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure (singular system without a usable fallback, etc).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complex baseband samples with an absolute time index for sample 0.
/// `origin` may be negative: head-side virtual symbols live before the
/// data burst, which starts at absolute index 0.
struct ComplexSignal {
    std::vector<cplx> samples;
    long origin = 0;

    ComplexSignal() = default;
    ComplexSignal(std::size_t n, long origin_) : samples(n), origin(origin_) {}

    long begin_index() const { return origin; }
    long end_index() const { return origin + static_cast<long>(samples.size()) - 1; }

    /// Value at absolute index k; zero outside the stored range.
    cplx at(long k) const {
        const long i = k - origin;
        if (i < 0 || i >= static_cast<long>(samples.size())) return {};
        return samples[static_cast<std::size_t>(i)];
    }

    /// Mutable access; the index must be inside the stored range.
    cplx& ref(long k) {
        return samples.at(static_cast<std::size_t>(k - origin));
    }

    double energy() const {
        double e = 0.0;
        for (const cplx& s : samples) e += std::norm(s);
        return e;
    }

    /// Energy over absolute indices [lo, hi], clamped to the stored range.
    double energy_range(long lo, long hi) const;

    /// Adds `other` in place, growing the stored range as needed.
    void accumulate(const ComplexSignal& other);
};

/// Real PAM symbols: rows follow the active-carrier order of the config,
/// columns are the half-symbol time slots.
struct PamGrid {
    Eigen::MatrixXd values;

    PamGrid() = default;
    PamGrid(Eigen::Index carriers, Eigen::Index slots)
        : values(Eigen::MatrixXd::Zero(carriers, slots)) {}

    Eigen::Index carriers() const { return values.rows(); }
    Eigen::Index slots() const { return values.cols(); }
};

/// All waveform parameters for one burst layout.
///
/// Index conventions (M samples per QAM interval, half-symbol stride M/2):
///   slot n pulse support   [n*M/2, n*M/2 + eta*M]
///   first/last slot center eta*M/2 and (N-1)*M/2 + eta*M/2
///   data burst support     [0, (N-1)*M/2 + eta*M]
/// `burst_begin`/`burst_end` are the kept extent after tail shortening.
struct BurstConfig {
    int M = 256;
    int eta = 4;
    int N = 14;                      // number of PAM slots
    std::vector<int> carriers;       // active subcarrier indices in [0, M)
    int V = 6;                       // virtual symbols per edge
    double gamma = 0.1;
    long burst_begin = 0;
    long burst_end = 0;

    long half_stride() const { return M / 2; }
    long first_center() const { return static_cast<long>(eta) * M / 2; }
    long last_center() const {
        return static_cast<long>(N - 1) * M / 2 + static_cast<long>(eta) * M / 2;
    }
    long data_end() const {
        return static_cast<long>(N - 1) * M / 2 + static_cast<long>(eta) * M;
    }
    long extended_begin() const { return -static_cast<long>(V) * M / 2; }
    long extended_end() const {
        return static_cast<long>(N + V - 1) * M / 2 + static_cast<long>(eta) * M;
    }
    long kept_length() const { return burst_end - burst_begin + 1; }

    std::size_t n_active() const { return carriers.size(); }

    /// Default kept extent: half a symbol interval past the edge slot centers.
    void set_default_boundaries() {
        burst_begin = first_center() - M / 2;
        burst_end = last_center() + M / 2;
    }

    /// Kept extent from the tail overhead beyond the CP-free reference end
    /// K_ref = last_center + M/4 (mirrored at the head).
    void set_boundaries_from_overhead(long overhead) {
        burst_end = last_center() + M / 4 + overhead;
        burst_begin = first_center() - M / 4 - overhead;
    }

    /// Band of `count` carriers centered on DC (wrapped indices).
    static std::vector<int> centered_band(int M, int count);

    static BurstConfig make(int M, int eta, int N, int n_active, int V, double gamma);

    /// Throws ConfigError when structurally unusable.
    void validate() const;
};

}  // namespace fbmc
