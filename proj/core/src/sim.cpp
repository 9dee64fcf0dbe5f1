#include "fbmc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbmc/util.hpp"

namespace fbmc {

ComplexSignal emit_train(const PacketTrain& train, Method method,
                         const TrainDesigns& designs,
                         const PrototypeFilter& filter,
                         const BurstConfig& config) {
    if (train.spacing < 1) throw ConfigError("emit_train: spacing must be >= 1");
    ShortenOptions opts;
    opts.head = designs.head;
    opts.tail = designs.tail;
    opts.window_rolloff = config.M / 4;

    ComplexSignal stream;
    for (std::size_t i = 0; i < train.packets.size(); ++i) {
        ComplexSignal s = shorten(train.packets[i].grid, filter, config, method, opts);
        if (train.policy == OverlapPolicy::truncate_residual)
            s = hard_truncate(s, config.burst_begin, config.burst_end);
        s.origin += static_cast<long>(i) * train.spacing;
        stream.accumulate(s);
    }
    return stream;
}

ComplexSignal awgn(const ComplexSignal& signal, double ebn0_db,
                   std::uint64_t total_bits, std::uint64_t seed) {
    if (std::isinf(ebn0_db) && ebn0_db > 0) return signal;
    if (total_bits == 0) throw ConfigError("awgn: total_bits must be > 0");
    const double eb = signal.energy() / static_cast<double>(total_bits);
    const double n0 = eb * std::pow(10.0, -ebn0_db / 10.0);
    const double sigma = std::sqrt(n0 / 2.0);

    ComplexSignal out = signal;
    auto engine = make_engine(seed, 0x6e6f697365ull);  // noise stream
    std::normal_distribution<double> gauss(0.0, sigma);
    for (cplx& s : out.samples) {
        const double re = gauss(engine);
        const double im = gauss(engine);
        s += cplx(re, im);
    }
    return out;
}

namespace {

PamGrid receive_packet_at(const ComplexSignal& stream, long packet_origin,
                          long k_b, long k_e, const PrototypeFilter& filter,
                          const BurstConfig& config) {
    if (k_b > k_e) throw ConfigError("receive_packet: inverted window");
    const long pad = static_cast<long>(config.eta) * config.M;
    const long lo = k_b - packet_origin;  // packet-local window
    const long hi = k_e - packet_origin;
    ComplexSignal local(static_cast<std::size_t>(hi - lo + 1 + 2 * pad), lo - pad);
    for (long k = lo; k <= hi; ++k)
        local.ref(k) = stream.at(packet_origin + k);
    return demodulate(local, filter, config);
}

}  // namespace

PamGrid receive_packet(const ComplexSignal& stream, long k_b, long k_e,
                       const PrototypeFilter& filter,
                       const BurstConfig& config) {
    // k_b is the packet's kept start, so the packet time origin sits
    // burst_begin samples earlier.
    return receive_packet_at(stream, k_b - config.burst_begin, k_b, k_e, filter,
                             config);
}

Packet random_packet(const BurstConfig& config, const QamMapper& mapper,
                     std::uint64_t seed, std::uint64_t packet_index) {
    if (config.N % 2 != 0)
        throw ConfigError("random_packet: N must be even for QAM payloads");
    const int bits_per_qam = mapper.bits_per_symbol();
    const auto n_act = static_cast<Eigen::Index>(config.carriers.size());
    const int n_qam = config.N / 2;

    Packet pkt;
    pkt.bits.resize(static_cast<std::size_t>(n_act) * n_qam * bits_per_qam);
    auto engine = make_engine(seed, packet_index);
    std::uint64_t word = 0;
    int avail = 0;
    for (auto& b : pkt.bits) {
        if (avail == 0) {
            word = engine();
            avail = 64;
        }
        b = static_cast<std::uint8_t>(word & 1);
        word >>= 1;
        --avail;
    }

    Eigen::MatrixXcd qam(n_act, n_qam);
    std::size_t off = 0;
    for (Eigen::Index mi = 0; mi < n_act; ++mi)
        for (int l = 0; l < n_qam; ++l, off += bits_per_qam)
            qam(mi, l) = mapper.map(&pkt.bits[off]);
    pkt.grid = qam_to_pam(qam);
    return pkt;
}

std::string ber_scenario_name(BerScenario s) {
    switch (s) {
        case BerScenario::isolated_none: return "isolated";
        case BerScenario::overlap_virtual: return "overlap_virtual";
        case BerScenario::overlap_none: return "overlap_none";
    }
    return "?";
}

std::vector<BerPoint> run_ber_experiment(const BerExperimentConfig& cfg,
                                         const PrototypeFilter& filter) {
    cfg.burst.validate();
    if (cfg.ebn0_db.empty()) throw ConfigError("ber: empty Eb/N0 grid");
    const QamMapper mapper(cfg.qam_order);
    const auto n_act = cfg.burst.carriers.size();
    const std::uint64_t bits_per_packet =
        n_act * static_cast<std::uint64_t>(cfg.burst.N / 2) *
        static_cast<std::uint64_t>(mapper.bits_per_symbol());
    const std::size_t n_packets = static_cast<std::size_t>(
        (cfg.min_bits + bits_per_packet - 1) / bits_per_packet);
    if (n_packets == 0) throw ConfigError("ber: zero packets requested");

    // Same payloads in every scenario; only the tail handling and the
    // noise realizations differ.
    std::vector<Packet> packets(n_packets);
    parallel_for(n_packets, cfg.threads, [&](std::size_t i) {
        packets[i] = random_packet(cfg.burst, mapper, cfg.seed, i);
    });

    struct Case {
        BerScenario scenario;
        double gamma;
    };
    std::vector<Case> cases;
    cases.push_back({BerScenario::isolated_none, 0.0});
    for (double g : cfg.gammas) cases.push_back({BerScenario::overlap_virtual, g});
    if (cfg.include_overlap_none) cases.push_back({BerScenario::overlap_none, 0.0});

    std::vector<BerPoint> table;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const Case& c = cases[ci];
        BurstConfig burst = cfg.burst;
        Method method = Method::none;
        CancellationDesign head, tail;
        TrainDesigns designs;
        if (c.scenario == BerScenario::overlap_virtual) {
            burst.gamma = c.gamma;
            head = build_design(filter, burst, Edge::head);
            tail = build_design(filter, burst, Edge::tail);
            designs.head = &head;
            designs.tail = &tail;
            method = Method::virtual_symbols;  // residual tails stay in
        }

        PacketTrain train;
        train.packets = packets;
        train.policy = OverlapPolicy::overlap_residual;
        const bool isolated = c.scenario == BerScenario::isolated_none;
        train.spacing = isolated
                            ? burst.data_end() + 1 + burst.eta * burst.M
                            : burst.kept_length();
        const ComplexSignal stream = emit_train(train, method, designs, filter, burst);

        for (std::size_t ei = 0; ei < cfg.ebn0_db.size(); ++ei) {
            const std::uint64_t total_bits = bits_per_packet * n_packets;
            const std::uint64_t noise_stream =
                (static_cast<std::uint64_t>(ci + 1) << 40) ^
                (static_cast<std::uint64_t>(ei + 1) << 8);
            const ComplexSignal noisy =
                awgn(stream, cfg.ebn0_db[ei], total_bits,
                     splitmix64(cfg.seed ^ noise_stream));

            std::vector<std::uint64_t> errors(n_packets, 0);
            parallel_for(n_packets, cfg.threads, [&](std::size_t i) {
                const long origin = static_cast<long>(i) * train.spacing;
                PamGrid rx;
                if (isolated) {
                    rx = receive_packet_at(noisy, origin, origin,
                                           origin + burst.data_end(), filter, burst);
                } else {
                    rx = receive_packet(noisy, origin + burst.burst_begin,
                                        origin + burst.burst_end, filter, burst);
                }
                const Eigen::MatrixXcd qam = pam_to_qam(rx);
                std::vector<std::uint8_t> bits(bits_per_packet);
                std::size_t off = 0;
                for (Eigen::Index mi = 0; mi < qam.rows(); ++mi)
                    for (Eigen::Index l = 0; l < qam.cols(); ++l) {
                        mapper.demap(qam(mi, l), &bits[off]);
                        off += static_cast<std::size_t>(mapper.bits_per_symbol());
                    }
                std::uint64_t e = 0;
                for (std::size_t b = 0; b < bits.size(); ++b)
                    e += (bits[b] ^ packets[i].bits[b]) & 1;
                errors[i] = e;
            });

            BerPoint point;
            point.ebn0_db = cfg.ebn0_db[ei];
            point.scenario = c.scenario;
            point.gamma = c.gamma;
            point.bits = total_bits;
            for (std::uint64_t e : errors) point.errors += e;
            table.push_back(point);
        }
    }
    return table;
}

}  // namespace fbmc
