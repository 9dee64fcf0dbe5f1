#include <doctest.h>

#include "fbmc/experiments.hpp"
#include "fbmc/sim.hpp"
#include "fbmc/util.hpp"

using namespace fbmc;

namespace {

PrototypeFilter small_filter() { return phydyas_filter(16, 4); }

BurstConfig small_config() { return BurstConfig::make(16, 4, 8, 8, 2, 0.1); }

}  // namespace

TEST_CASE("single-packet train equals shorten at offset zero") {
    const PrototypeFilter f = small_filter();
    const BurstConfig cfg = small_config();
    const QamMapper mapper(4);
    PacketTrain train;
    train.packets.push_back(random_packet(cfg, mapper, 3, 0));
    train.spacing = cfg.kept_length();
    train.policy = OverlapPolicy::overlap_residual;

    const ComplexSignal stream = emit_train(train, Method::none, {}, f, cfg);
    const ComplexSignal direct = synthesize(train.packets[0].grid, f, cfg);
    REQUIRE(stream.samples.size() == direct.samples.size());
    for (std::size_t i = 0; i < stream.samples.size(); ++i)
        CHECK(stream.samples[i] == direct.samples[i]);

    PacketTrain bad = train;
    bad.spacing = 0;
    CHECK_THROWS_AS(emit_train(bad, Method::none, {}, f, cfg), ConfigError);
}

TEST_CASE("zero packets sum to a zero stream") {
    const PrototypeFilter f = small_filter();
    const BurstConfig cfg = small_config();
    PacketTrain train;
    for (int i = 0; i < 2; ++i) {
        Packet p;
        p.grid = PamGrid(static_cast<Eigen::Index>(cfg.carriers.size()), cfg.N);
        train.packets.push_back(p);
    }
    train.spacing = cfg.kept_length();
    const ComplexSignal stream = emit_train(train, Method::none, {}, f, cfg);
    CHECK(stream.energy() == 0.0);
}

TEST_CASE("energy accounting with truncated residuals and wide spacing") {
    const PrototypeFilter f = small_filter();
    const BurstConfig cfg = small_config();
    const QamMapper mapper(16);
    PacketTrain train;
    for (std::uint64_t i = 0; i < 3; ++i)
        train.packets.push_back(random_packet(cfg, mapper, 17, i));
    train.spacing = cfg.data_end() + 16;
    train.policy = OverlapPolicy::truncate_residual;

    const ComplexSignal stream = emit_train(train, Method::none, {}, f, cfg);
    double per_packet = 0.0;
    for (const Packet& p : train.packets) {
        const ComplexSignal s = hard_truncate(synthesize(p.grid, f, cfg),
                                              cfg.burst_begin, cfg.burst_end);
        per_packet += s.energy();
    }
    CHECK(stream.energy() == doctest::Approx(per_packet).epsilon(1e-10));
}

TEST_CASE("awgn calibration and determinism") {
    const PrototypeFilter f = small_filter();
    const BurstConfig cfg = small_config();
    const QamMapper mapper(64);
    PacketTrain train;
    for (std::uint64_t i = 0; i < 50; ++i)
        train.packets.push_back(random_packet(cfg, mapper, 23, i));
    train.spacing = cfg.kept_length();
    const ComplexSignal stream = emit_train(train, Method::none, {}, f, cfg);

    const std::uint64_t bits = train.packets.size() * train.packets[0].bits.size();

    SUBCASE("infinite ebn0 returns the signal unchanged") {
        const ComplexSignal same =
            awgn(stream, std::numeric_limits<double>::infinity(), bits, 5);
        CHECK(same.samples == stream.samples);
    }

    SUBCASE("fixed seed reproduces bit-identical noise") {
        const ComplexSignal a = awgn(stream, 12.0, bits, 5);
        const ComplexSignal b = awgn(stream, 12.0, bits, 5);
        CHECK(a.samples == b.samples);
        const ComplexSignal c = awgn(stream, 12.0, bits, 6);
        CHECK(a.samples != c.samples);
    }

    SUBCASE("noise power matches the requested Eb/N0 within 0.1 dB") {
        const double ebn0_db = 9.0;
        const ComplexSignal noisy = awgn(stream, ebn0_db, bits, 5);
        double noise_energy = 0.0;
        for (std::size_t i = 0; i < stream.samples.size(); ++i)
            noise_energy += std::norm(noisy.samples[i] - stream.samples[i]);
        const double n0_measured = noise_energy / stream.samples.size();
        const double n0_wanted = stream.energy() / static_cast<double>(bits) *
                                 std::pow(10.0, -ebn0_db / 10.0);
        CHECK(10.0 * std::log10(n0_measured / n0_wanted) ==
              doctest::Approx(0.0).epsilon(0.1));
    }

    CHECK_THROWS_AS(awgn(stream, 10.0, 0, 1), ConfigError);
}

TEST_CASE("receive_packet recovers an isolated clean packet") {
    const PrototypeFilter f = small_filter();
    const BurstConfig cfg = small_config();
    const QamMapper mapper(64);
    const Packet pkt = random_packet(cfg, mapper, 29, 0);
    const ComplexSignal s = synthesize(pkt.grid, f, cfg);

    // full-support window: round trip stays below -50 dB
    ComplexSignal stream = s;
    stream.origin += 1000;
    BurstConfig full = cfg;  // window = whole untreated support
    full.burst_begin = 0;
    full.burst_end = cfg.data_end();
    const PamGrid rx = receive_packet(stream, 1000, 1000 + cfg.data_end(), f, full);
    const double err = (rx.values - pkt.grid.values).squaredNorm();
    const double ref = pkt.grid.values.squaredNorm();
    CHECK(10.0 * std::log10(err / ref) < -50.0);

    ComplexSignal empty(64, 0);
    const PamGrid zero = receive_packet(empty, cfg.burst_begin, cfg.burst_end, f, cfg);
    CHECK(zero.values.isZero(0.0));
}

TEST_CASE("residual overlap leaks below -45 dBc into the neighbour window") {
    // reference-scale check; also pins the design dimensions
    const PrototypeFilter f = phydyas_filter(256, 4);
    const BurstConfig cfg = BurstConfig::make(256, 4, 14, 200, 6, 0.1);
    const CancellationDesign head = build_design(f, cfg, Edge::head);
    const CancellationDesign tail = build_design(f, cfg, Edge::tail);
    CHECK(tail.B.rows() == 1200);
    CHECK(tail.B.cols() == 2304);  // 2 * (V + eta - 1) * M/2 suppressed rows
    CHECK(head.B.rows() == 1200);

    const QamMapper mapper(64);
    PacketTrain train;
    train.packets.push_back(random_packet(cfg, mapper, 41, 0));
    Packet silent;  // neighbour slot left empty to expose the leak
    silent.grid = PamGrid(200, cfg.N);
    train.packets.push_back(silent);
    train.spacing = cfg.kept_length();
    train.policy = OverlapPolicy::overlap_residual;

    TrainDesigns designs{&head, &tail};
    const ComplexSignal stream =
        emit_train(train, Method::virtual_symbols, designs, f, cfg);
    const ComplexSignal lone = synthesize(train.packets[0].grid, f, cfg);
    const double leak = stream.energy_range(train.spacing + cfg.burst_begin,
                                            train.spacing + cfg.burst_end);
    CHECK(10.0 * std::log10(leak / dbc_reference(lone, cfg)) < -45.0);
}

TEST_CASE("ber experiment is deterministic and rejects empty grids") {
    const PrototypeFilter f = small_filter();
    BerExperimentConfig cfg;
    cfg.burst = small_config();
    cfg.qam_order = 4;
    cfg.ebn0_db = {8.0};
    cfg.gammas = {0.1};
    cfg.min_bits = 4000;
    cfg.seed = 3;
    cfg.threads = 2;
    cfg.include_overlap_none = true;

    const auto a = run_ber_experiment(cfg, f);
    cfg.threads = 4;
    const auto b = run_ber_experiment(cfg, f);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].errors == b[i].errors);
        CHECK(a[i].bits == b[i].bits);
    }

    BerExperimentConfig bad = cfg;
    bad.ebn0_db = {};
    CHECK_THROWS_AS(run_ber_experiment(bad, f), ConfigError);
}
