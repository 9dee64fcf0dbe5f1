#pragma once

#include <cstdint>
#include <vector>

#include "fbmc/metrics.hpp"
#include "fbmc/tailshort.hpp"
#include "fbmc/types.hpp"
#include "fbmc/waveform.hpp"

namespace fbmc {

enum class OverlapPolicy { truncate_residual, overlap_residual };

struct Packet {
    PamGrid grid;
    std::vector<std::uint8_t> bits;
};

struct PacketTrain {
    std::vector<Packet> packets;
    long spacing = 0;  // start-to-start distance in samples
    OverlapPolicy policy = OverlapPolicy::overlap_residual;
};

struct TrainDesigns {
    const CancellationDesign* head = nullptr;
    const CancellationDesign* tail = nullptr;
};

/// Shortens each packet per `method` and sums it into a continuous stream
/// at offset i*spacing. With overlap_residual the residual tails add into
/// the neighbouring packets; with truncate_residual every packet is
/// clipped to its kept extent first.
ComplexSignal emit_train(const PacketTrain& train, Method method,
                         const TrainDesigns& designs,
                         const PrototypeFilter& filter,
                         const BurstConfig& config);

/// Adds circularly-symmetric complex Gaussian noise. The per-sample noise
/// variance is calibrated from the measured signal energy per transmitted
/// bit: N0 = (||s||^2 / total_bits) * 10^(-ebn0_db/10). An infinite
/// ebn0_db returns the signal unchanged.
ComplexSignal awgn(const ComplexSignal& signal, double ebn0_db,
                   std::uint64_t total_bits, std::uint64_t seed);

/// Receiver procedure for one packet: keep [k_b, k_e], zero the rest, pad
/// eta*M zeros on both sides, and run the matched-filter analysis. k_b is
/// the packet's kept start in stream coordinates (ground truth).
PamGrid receive_packet(const ComplexSignal& stream, long k_b, long k_e,
                       const PrototypeFilter& filter,
                       const BurstConfig& config);

/// Random payload packet: Gray-mapped QAM bits drawn from the per-packet
/// stream of `seed`.
Packet random_packet(const BurstConfig& config, const QamMapper& mapper,
                     std::uint64_t seed, std::uint64_t packet_index);

enum class BerScenario { isolated_none, overlap_virtual, overlap_none };

std::string ber_scenario_name(BerScenario s);

struct BerPoint {
    double ebn0_db = 0.0;
    BerScenario scenario = BerScenario::isolated_none;
    double gamma = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ber() const { return bits ? static_cast<double>(errors) / bits : 0.0; }
};

struct BerExperimentConfig {
    BurstConfig burst;
    int qam_order = 64;
    std::vector<double> ebn0_db;
    std::vector<double> gammas{0.1};  // for overlap_virtual
    std::uint64_t min_bits = 2'000'000;
    std::uint64_t seed = 1;
    int threads = 1;
    bool include_overlap_none = true;
};

/// Full link Monte-Carlo. Deterministic for a fixed seed; rows are ordered
/// (scenario, gamma, ebn0).
std::vector<BerPoint> run_ber_experiment(const BerExperimentConfig& cfg,
                                         const PrototypeFilter& filter);

}  // namespace fbmc
