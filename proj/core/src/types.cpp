#include "fbmc/types.hpp"

#include <algorithm>

namespace fbmc {

double ComplexSignal::energy_range(long lo, long hi) const {
    lo = std::max(lo, begin_index());
    hi = std::min(hi, end_index());
    double e = 0.0;
    for (long k = lo; k <= hi; ++k)
        e += std::norm(samples[static_cast<std::size_t>(k - origin)]);
    return e;
}

void ComplexSignal::accumulate(const ComplexSignal& other) {
    if (other.samples.empty()) return;
    if (samples.empty()) {
        *this = other;
        return;
    }
    const long lo = std::min(begin_index(), other.begin_index());
    const long hi = std::max(end_index(), other.end_index());
    if (lo < begin_index() || hi > end_index()) {
        std::vector<cplx> grown(static_cast<std::size_t>(hi - lo + 1));
        std::copy(samples.begin(), samples.end(),
                  grown.begin() + static_cast<std::ptrdiff_t>(origin - lo));
        samples = std::move(grown);
        origin = lo;
    }
    for (long k = other.begin_index(); k <= other.end_index(); ++k)
        samples[static_cast<std::size_t>(k - origin)] +=
            other.samples[static_cast<std::size_t>(k - other.origin)];
}

std::vector<int> BurstConfig::centered_band(int M, int count) {
    if (count < 1 || count > M)
        throw ConfigError("active carrier count must be in [1, M]");
    std::vector<int> band(static_cast<std::size_t>(count));
    const int lo = -count / 2;
    for (int i = 0; i < count; ++i) {
        const int offset = lo + i;
        band[static_cast<std::size_t>(i)] = ((offset % M) + M) % M;
    }
    return band;
}

BurstConfig BurstConfig::make(int M, int eta, int N, int n_active, int V,
                              double gamma) {
    BurstConfig cfg;
    cfg.M = M;
    cfg.eta = eta;
    cfg.N = N;
    cfg.V = V;
    cfg.gamma = gamma;
    cfg.carriers = centered_band(M, n_active);
    cfg.set_default_boundaries();
    return cfg;
}

void BurstConfig::validate() const {
    if (M < 2 || M % 2 != 0) throw ConfigError("M must be even and >= 2");
    if (eta < 1) throw ConfigError("eta must be >= 1");
    if (N < 1) throw ConfigError("N must be >= 1");
    if (carriers.empty()) throw ConfigError("no active carriers");
    std::vector<int> sorted = carriers;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= M)
            throw ConfigError("carrier index out of [0, M)");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw ConfigError("duplicate carrier index");
    }
    if (V < 0) throw ConfigError("V must be >= 0");
    if (gamma < 0.0) throw ConfigError("gamma must be >= 0");
    if (burst_end < burst_begin) throw ConfigError("burst_end < burst_begin");
}

}  // namespace fbmc
