#pragma once

#include <vector>

#include <Eigen/Core>

#include "fbmc/prototype.hpp"
#include "fbmc/types.hpp"

namespace fbmc {

/// Staggers complex symbols into real PAM pairs: slot 2l takes the real
/// part of the l-th symbol, slot 2l+1 the imaginary part.
PamGrid qam_to_pam(const Eigen::MatrixXcd& qam);
Eigen::MatrixXcd pam_to_qam(const PamGrid& grid);

/// OQAM synthesis of `grid` with slot n placed at n*M/2; sample k of the
/// output carries sum_m sum_n a(m,n) g(k - n*M/2) e^{j2pi m k/M} j^{m+n}.
/// The returned signal spans [0, (N-1)M/2 + eta*M].
ComplexSignal synthesize(const PamGrid& grid, const PrototypeFilter& filter,
                         const BurstConfig& config);

/// Same synthesis with the first column mapped to slot q0 (may be
/// negative). Phases and carriers use absolute slot and sample indices.
ComplexSignal synthesize_block(const Eigen::MatrixXd& values, int q0,
                               const PrototypeFilter& filter,
                               const BurstConfig& config);

/// Matched-filter analysis of slots 0..N-1 at absolute positions:
/// a_hat(m,n) = Re[ j^{-(m+n)} sum_k s(k) g(k - n*M/2) e^{-j2pi m k/M} ].
/// Samples missing from the signal's stored range count as zero.
PamGrid demodulate(const ComplexSignal& signal, const PrototypeFilter& filter,
                   const BurstConfig& config);

/// Gray-mapped square QAM with unit average symbol energy.
class QamMapper {
  public:
    explicit QamMapper(int order);  // 4, 16, 64, 256

    int order() const { return order_; }
    int bits_per_symbol() const { return bits_; }

    cplx map(const std::uint8_t* bits) const;
    void demap(cplx symbol, std::uint8_t* bits) const;

    /// One PAM level from bits_per_symbol()/2 bits (Gray order).
    double map_pam(const std::uint8_t* bits) const;
    void demap_pam(double value, std::uint8_t* bits) const;

    double pam_symbol_energy() const { return pam_energy_; }
    const std::vector<double>& pam_levels() const { return levels_; }

  private:
    int order_;
    int bits_;
    int side_;
    double scale_;
    double pam_energy_;
    std::vector<double> levels_;     // Gray-code order
    std::vector<int> gray_of_rank_;  // level rank -> gray index
};

}  // namespace fbmc
