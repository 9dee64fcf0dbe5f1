#include "fbmc/waveform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace fbmc {

namespace {

// j^(x mod 4)
inline cplx quarter_phase(long x) {
    switch (((x % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

inline std::size_t wrap_mod(long k, long m) { return static_cast<std::size_t>(((k % m) + m) % m); }

// Shared FFTW plans per size; new-array execution keeps workers independent.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    struct Plans {
        fftw_plan forward = nullptr;
        fftw_plan backward = nullptr;
    };

    Plans get(int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        Plans p;
        p.forward = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                     reinterpret_cast<fftw_complex*>(b.data()),
                                     FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.backward = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                      reinterpret_cast<fftw_complex*>(b.data()),
                                      FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_[n] = p;
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<int, Plans> plans_;
};

void check_dims(Eigen::Index rows, const PrototypeFilter& filter,
                const BurstConfig& config) {
    if (filter.samples_per_symbol != config.M ||
        filter.overlap_factor != config.eta)
        throw ConfigError("filter does not match the burst configuration");
    if (rows != static_cast<Eigen::Index>(config.carriers.size()))
        throw ConfigError("grid row count does not match active carriers");
}

}  // namespace

void fft_forward(std::vector<cplx>& inout_in, std::vector<cplx>& out) {
    const int n = static_cast<int>(inout_in.size());
    auto plans = PlanCache::instance().get(n);
    fftw_execute_dft(plans.forward, reinterpret_cast<fftw_complex*>(inout_in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

void fft_backward(std::vector<cplx>& inout_in, std::vector<cplx>& out) {
    const int n = static_cast<int>(inout_in.size());
    auto plans = PlanCache::instance().get(n);
    fftw_execute_dft(plans.backward, reinterpret_cast<fftw_complex*>(inout_in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

PamGrid qam_to_pam(const Eigen::MatrixXcd& qam) {
    PamGrid grid(qam.rows(), qam.cols() * 2);
    for (Eigen::Index m = 0; m < qam.rows(); ++m) {
        for (Eigen::Index l = 0; l < qam.cols(); ++l) {
            grid.values(m, 2 * l) = qam(m, l).real();
            grid.values(m, 2 * l + 1) = qam(m, l).imag();
        }
    }
    return grid;
}

Eigen::MatrixXcd pam_to_qam(const PamGrid& grid) {
    if (grid.slots() % 2 != 0)
        throw ConfigError("pam_to_qam: slot count must be even");
    Eigen::MatrixXcd qam(grid.carriers(), grid.slots() / 2);
    for (Eigen::Index m = 0; m < grid.carriers(); ++m)
        for (Eigen::Index l = 0; l < qam.cols(); ++l)
            qam(m, l) = cplx(grid.values(m, 2 * l), grid.values(m, 2 * l + 1));
    return qam;
}

ComplexSignal synthesize_block(const Eigen::MatrixXd& values, int q0,
                               const PrototypeFilter& filter,
                               const BurstConfig& config) {
    check_dims(values.rows(), filter, config);
    const int M = config.M;
    const long half = config.half_stride();
    const long span = static_cast<long>(filter.length()) - 1;  // eta*M
    const long origin = static_cast<long>(q0) * half;
    const long last =
        (static_cast<long>(q0) + values.cols() - 1) * half + span;

    ComplexSignal out(static_cast<std::size_t>(last - origin + 1), origin);
    std::vector<cplx> bins(static_cast<std::size_t>(M));
    std::vector<cplx> wave(static_cast<std::size_t>(M));

    for (Eigen::Index qi = 0; qi < values.cols(); ++qi) {
        const long q = q0 + qi;
        std::fill(bins.begin(), bins.end(), cplx{});
        bool any = false;
        for (Eigen::Index mi = 0; mi < values.rows(); ++mi) {
            const double a = values(mi, qi);
            if (a == 0.0) continue;
            const int p = config.carriers[static_cast<std::size_t>(mi)];
            bins[static_cast<std::size_t>(p)] += a * quarter_phase(p + q);
            any = true;
        }
        if (!any) continue;
        // wave[r] = sum_p bins[p] e^{+j 2pi p r / M}
        fft_backward(bins, wave);
        const long base = q * half;
        for (long r = 0; r <= span; ++r) {
            out.samples[static_cast<std::size_t>(base + r - origin)] +=
                filter.taps[static_cast<std::size_t>(r)] * wave[wrap_mod(base + r, M)];
        }
    }
    return out;
}

ComplexSignal synthesize(const PamGrid& grid, const PrototypeFilter& filter,
                         const BurstConfig& config) {
    if (grid.slots() != config.N)
        throw ConfigError("grid slot count does not match N");
    return synthesize_block(grid.values, 0, filter, config);
}

PamGrid demodulate(const ComplexSignal& signal, const PrototypeFilter& filter,
                   const BurstConfig& config) {
    check_dims(static_cast<Eigen::Index>(config.carriers.size()), filter, config);
    const int M = config.M;
    const long half = config.half_stride();
    const long span = static_cast<long>(filter.length()) - 1;

    PamGrid grid(static_cast<Eigen::Index>(config.carriers.size()), config.N);
    std::vector<cplx> folded(static_cast<std::size_t>(M));
    std::vector<cplx> spectrum(static_cast<std::size_t>(M));

    for (int n = 0; n < config.N; ++n) {
        std::fill(folded.begin(), folded.end(), cplx{});
        const long base = static_cast<long>(n) * half;
        for (long r = 0; r <= span; ++r) {
            const cplx v = signal.at(base + r);
            if (v == cplx{}) continue;
            folded[wrap_mod(base + r, M)] +=
                v * filter.taps[static_cast<std::size_t>(r)];
        }
        // spectrum[p] = sum_t folded[t] e^{-j 2pi p t / M}
        fft_forward(folded, spectrum);
        for (Eigen::Index mi = 0; mi < grid.carriers(); ++mi) {
            const int p = config.carriers[static_cast<std::size_t>(mi)];
            grid.values(mi, n) =
                (quarter_phase(-(static_cast<long>(p) + n)) *
                 spectrum[static_cast<std::size_t>(p)])
                    .real();
        }
    }
    return grid;
}

QamMapper::QamMapper(int order) : order_(order) {
    switch (order) {
        case 4: bits_ = 2; break;
        case 16: bits_ = 4; break;
        case 64: bits_ = 6; break;
        case 256: bits_ = 8; break;
        default:
            throw ConfigError("unsupported QAM order " + std::to_string(order) +
                              " (supported: 4, 16, 64, 256)");
    }
    side_ = 1 << (bits_ / 2);
    scale_ = std::sqrt(3.0 / (2.0 * (order_ - 1)));
    pam_energy_ = scale_ * scale_ * (order_ - 1) / 3.0;  // = 1/2
    levels_.resize(static_cast<std::size_t>(side_));
    gray_of_rank_.resize(static_cast<std::size_t>(side_));
    for (int rank = 0; rank < side_; ++rank) {
        const int gray = rank ^ (rank >> 1);
        gray_of_rank_[static_cast<std::size_t>(rank)] = gray;
        levels_[static_cast<std::size_t>(gray)] =
            scale_ * (2 * rank - side_ + 1);
    }
}

double QamMapper::map_pam(const std::uint8_t* bits) const {
    int gray = 0;
    for (int b = 0; b < bits_ / 2; ++b) gray = (gray << 1) | (bits[b] & 1);
    return levels_[static_cast<std::size_t>(gray)];
}

void QamMapper::demap_pam(double value, std::uint8_t* bits) const {
    long rank = std::lround((value / scale_ + side_ - 1) / 2.0);
    rank = std::max(0l, std::min<long>(rank, side_ - 1));
    const int gray = gray_of_rank_[static_cast<std::size_t>(rank)];
    for (int b = 0; b < bits_ / 2; ++b)
        bits[b] = static_cast<std::uint8_t>((gray >> (bits_ / 2 - 1 - b)) & 1);
}

cplx QamMapper::map(const std::uint8_t* bits) const {
    return {map_pam(bits), map_pam(bits + bits_ / 2)};
}

void QamMapper::demap(cplx symbol, std::uint8_t* bits) const {
    demap_pam(symbol.real(), bits);
    demap_pam(symbol.imag(), bits + bits_ / 2);
}

}  // namespace fbmc
