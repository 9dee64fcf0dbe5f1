#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "fbmc/prototype.hpp"
#include "fbmc/types.hpp"
#include "fbmc/waveform.hpp"

namespace fbmc {

enum class Edge { head, tail };
enum class Method { none, hard, windowed, virtual_symbols, virtual_truncate };

Method method_from_string(const std::string& name);
std::string method_name(Method m);

/// Zeroes samples outside [k_b, k_e].
ComplexSignal hard_truncate(const ComplexSignal& signal, long k_b, long k_e);

/// Raised-cosine taper: unity inside, half-cosine roll-off over the last
/// l_ro samples before each boundary, zero outside. l_ro = 0 degenerates
/// to hard truncation.
ComplexSignal windowed_truncate(const ComplexSignal& signal, long k_b, long k_e,
                                long l_ro);

/// Precomputed per-edge solver matrix mapping the stacked re/im samples of
/// the burst ramp onto the cancelling virtual symbols. Data independent:
/// built once per configuration and reused for every packet.
struct CancellationDesign {
    Eigen::MatrixXd B;        // (|carriers|*V) x (2*n_out)
    Edge edge = Edge::tail;
    int q0 = 0;               // first virtual slot (N for tail, -V for head)
    long out_lo = 0, out_hi = 0;  // suppressed sample range
    long in_lo = 0, in_hi = 0;    // protected sample range
    std::uint64_t config_hash = 0;
    double gamma = 0.0;       // user-facing knob
    double weight = 0.0;      // normal-equation weight actually used
    double cond_estimate = 0.0;
    double normal_residual = 0.0;  // relative, ||N*B - Gt1'|| / ||Gt1'||
    bool used_pseudo_inverse = false;

    long n_out() const { return out_hi - out_lo + 1; }
    long n_in() const { return in_hi - in_lo + 1; }
};

/// Virtual PAM symbols chosen for one burst edge.
struct VirtualSymbolBlock {
    Eigen::MatrixXd values;  // |carriers| x V
    Edge edge = Edge::tail;
    int q0 = 0;
};

std::uint64_t design_config_hash(const PrototypeFilter& filter,
                                 const BurstConfig& config, Edge edge);

/// Builds the least-squares cancellation design for one edge.
///
/// The basis columns are the FBMC pulses of the V virtual slots past the
/// edge. Rows cover the suppressed range (beyond the burst boundary, up to
/// the end of the extended support) stacked as [Re; Im]; the protected
/// in-band rows enter through the regularization term. The user-facing
/// gamma maps to the normal-equation weight gamma^2/2.
///
/// A rank-deficient normal matrix (possible at gamma = 0) falls back to a
/// minimum-norm pseudo-inverse solve and flags the design.
CancellationDesign build_design(const PrototypeFilter& filter,
                                const BurstConfig& config, Edge edge);

struct ApplyResult {
    ComplexSignal shortened;
    VirtualSymbolBlock block;
    ComplexSignal cancellation;  // the virtual-symbol signal alone
};

/// Computes the virtual symbols for this burst from the data-only signal
/// and returns the signal extended over the virtual-symbol support.
/// Throws ConfigError when the design hash does not match.
ApplyResult apply_design(const ComplexSignal& signal,
                         const CancellationDesign& design,
                         const PrototypeFilter& filter,
                         const BurstConfig& config);

struct ShortenOptions {
    const CancellationDesign* head = nullptr;
    const CancellationDesign* tail = nullptr;
    long window_rolloff = 0;  // raised-cosine roll-off for Method::windowed
};

/// One-call pipeline: synthesize, then shorten per `method`. Virtual
/// methods require both designs; virtual_truncate additionally zeroes all
/// residual samples outside the kept extent.
ComplexSignal shorten(const PamGrid& grid, const PrototypeFilter& filter,
                      const BurstConfig& config, Method method,
                      const ShortenOptions& options);

}  // namespace fbmc
