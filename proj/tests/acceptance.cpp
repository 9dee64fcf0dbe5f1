// End-to-end acceptance suite. Runs every gate at the reference
// configuration (PHYDYAS eta=4, M=256, 200 centered carriers, N=14, V=6)
// and prints one PASS/FAIL line per criterion.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "fbmc/experiments.hpp"
#include "fbmc/util.hpp"
#include "oracles.hpp"

using namespace fbmc;

namespace {

int g_failures = 0;

void check(const std::string& id, bool ok, const std::string& detail) {
    std::printf("[%s] %-3s %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

const SweepRow& sweep_at(const std::vector<SweepRow>& rows, double gamma) {
    for (const SweepRow& r : rows)
        if (!r.untreated && r.gamma == gamma) return r;
    throw std::runtime_error("sweep row missing");
}

// 95% confidence bound on |p1 - p2| for two independent error counts.
bool within_ci(std::uint64_t e1, std::uint64_t e2, std::uint64_t n) {
    const double p1 = static_cast<double>(e1) / static_cast<double>(n);
    const double p2 = static_cast<double>(e2) / static_cast<double>(n);
    const double var = p1 * (1.0 - p1) / static_cast<double>(n) +
                       p2 * (1.0 - p2) / static_cast<double>(n);
    return std::abs(p1 - p2) <= 1.96 * std::sqrt(var) + 1e-12;
}

bool significantly_worse(std::uint64_t e_bad, std::uint64_t e_ref,
                         std::uint64_t n) {
    const double p1 = static_cast<double>(e_bad) / static_cast<double>(n);
    const double p2 = static_cast<double>(e_ref) / static_cast<double>(n);
    const double var = p1 * (1.0 - p1) / static_cast<double>(n) +
                       p2 * (1.0 - p2) / static_cast<double>(n);
    return p1 - p2 > 1.96 * std::sqrt(var);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    const ExperimentSetup setup = ExperimentSetup::from_config(Config{});
    DesignBank bank;

    // --- 1, 2, 3 and the sweep half of 8 ----------------------------------
    const auto sweep = run_gamma_sweep(setup, bank);
    {
        const double untreated = sweep.front().xi1_dbc;
        check("1", std::abs(untreated + 12.1) <= 1.0,
              fmt("untreated tail energy %.2f dBc (want -12.1 +/- 1.0, %d bursts)",
                  untreated, setup.sweep_bursts));

        const SweepRow& g0 = sweep_at(sweep, 0.0);
        check("2", std::abs(g0.xi1_dbc + 53.3) <= 2.0 &&
                       std::abs(g0.xi2_dbc - 28.0) <= 2.0,
              fmt("gamma=0 extremes: xi1 %.2f dBc (want -53.3 +/- 2), xi2 %.2f dBc "
                  "(want 28.0 +/- 2)",
                  g0.xi1_dbc, g0.xi2_dbc));

        const SweepRow& op = sweep_at(sweep, 0.1);
        const SweepRow& lo = sweep_at(sweep, 0.005);
        check("3", op.xi1_dbc <= -45.0 && lo.xi2_dbc <= -10.0,
              fmt("xi1(0.1) %.2f dBc (want <= -45); xi2(0.005) %.2f dBc (want <= -10)",
                  op.xi1_dbc, lo.xi2_dbc));

        bool monotone = true;
        for (std::size_t i = 2; i < sweep.size(); ++i) {
            monotone &= sweep[i].xi1_dbc >= sweep[i - 1].xi1_dbc - 1e-9;
            monotone &= sweep[i].xi2_dbc <= sweep[i - 1].xi2_dbc + 1e-9;
        }
        check("8a", monotone,
              "xi1 nondecreasing and xi2 nonincreasing across the gamma grid");
    }

    // --- 4: EVM ordering ----------------------------------------------------
    {
        const auto evm = run_evm_experiment(setup, bank);
        bool ordering = true;
        double gap_at_op = 0.0;
        for (const EvmRow& r : evm) {
            ordering &= r.virtual_truncate_db < r.hard_db;
            ordering &= r.hard_db < r.windowed_db;
            if (r.gamma == 0.1) gap_at_op = r.hard_db - r.virtual_truncate_db;
        }
        check("4", ordering && gap_at_op >= 10.0,
              fmt("virtual+truncate < hard < windowed at every gamma; "
                  "virtual-to-hard gap at 0.1 is %.1f dB (want >= 10)",
                  gap_at_op));
    }

    // --- 8: solver properties ------------------------------------------------
    {
        bool residuals = true;
        double worst = 0.0;
        for (const auto& [hash, d] : bank.all()) {
            residuals &= d.normal_residual < 1e-9;
            worst = std::max(worst, d.normal_residual);
        }
        check("8b", residuals && !bank.all().empty(),
              fmt("normal-equation relative residual < 1e-9 on all %zu built "
                  "designs (worst %.2e)",
                  bank.all().size(), worst));

        const QamMapper mapper(setup.qam_order);
        const CancellationDesign& tail =
            bank.get(setup.filter, setup.burst, Edge::tail);
        std::vector<std::uint8_t> ok(1000, 0);
        parallel_for(ok.size(), setup.threads, [&](std::size_t i) {
            const Packet pkt = random_packet(setup.burst, mapper, 333, i);
            const ComplexSignal s = synthesize(pkt.grid, setup.filter, setup.burst);
            const ApplyResult r = apply_design(s, tail, setup.filter, setup.burst);
            const double with =
                r.shortened.energy_range(tail.out_lo, tail.out_hi) +
                tail.weight * r.cancellation.energy_range(tail.in_lo, tail.in_hi);
            const double without = s.energy_range(tail.out_lo, tail.out_hi);
            ok[i] = with <= without * (1.0 + 1e-9) ? 1 : 0;
        });
        std::size_t passed = 0;
        for (auto v : ok) passed += v;
        check("8c", passed == ok.size(),
              fmt("cancellation cost <= zero-solution cost on %zu/%zu random bursts",
                  passed, ok.size()));
    }

    // --- 9: oracle equivalence ------------------------------------------------
    {
        double worst_synth = 0.0;
        auto eng = make_engine(4242, 0);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int M : {16, 32}) {
            const PrototypeFilter f = phydyas_filter(M, 4);
            const BurstConfig cfg = BurstConfig::make(M, 4, 8, M, 2, 0.1);
            PamGrid grid(M, 8);
            for (Eigen::Index i = 0; i < grid.values.size(); ++i)
                grid.values.data()[i] = uni(eng);
            const ComplexSignal fast = synthesize(grid, f, cfg);
            const ComplexSignal slow = oracle::naive_synthesize(grid, f, cfg);
            for (long k = slow.begin_index(); k <= slow.end_index(); ++k)
                worst_synth =
                    std::max(worst_synth, std::abs(fast.at(k) - slow.at(k)));
        }

        const QamMapper mapper(setup.qam_order);
        double worst_rt = kDbFloor;
        for (std::uint64_t i = 0; i < 20; ++i) {
            const Packet pkt = random_packet(setup.burst, mapper, 777, i);
            const ComplexSignal s = synthesize(pkt.grid, setup.filter, setup.burst);
            const PamGrid back = demodulate(s, setup.filter, setup.burst);
            const double err = (back.values - pkt.grid.values).squaredNorm();
            worst_rt = std::max(
                worst_rt, 10.0 * std::log10(err / pkt.grid.values.squaredNorm()));
        }
        check("9", worst_synth < 1e-12 && worst_rt < -50.0,
              fmt("fast-vs-direct synthesis max |diff| %.1e (want < 1e-12); "
                  "noise-free round-trip EVM %.1f dB (want < -50)",
                  worst_synth, worst_rt));
    }

    // --- 5: BER with overlapping packets ---------------------------------------
    {
        const auto table = run_ber(setup);
        std::map<double, std::uint64_t> base_err, virt_err, none_err;
        std::uint64_t bits = 0;
        for (const BerPoint& p : table) {
            bits = p.bits;
            if (p.scenario == BerScenario::isolated_none)
                base_err[p.ebn0_db] = p.errors;
            if (p.scenario == BerScenario::overlap_virtual)
                virt_err[p.ebn0_db] = p.errors;
            if (p.scenario == BerScenario::overlap_none)
                none_err[p.ebn0_db] = p.errors;
        }
        bool all_ci = true;
        for (const auto& [ebn0, be] : base_err)
            all_ci &= within_ci(be, virt_err[ebn0], bits);
        const double max_ebn0 = setup.ber_ebn0_db.back();
        const bool degraded =
            significantly_worse(none_err[max_ebn0], base_err[max_ebn0], bits);
        check("5", all_ci && degraded && bits >= 2'000'000,
              fmt("%llu bits/point: overlapped gamma=0.1 within the 95%% CI of the "
                  "isolated baseline at every Eb/N0; unshortened overlap "
                  "significantly worse at %.0f dB (%llu vs %llu errors)",
                  static_cast<unsigned long long>(bits), max_ebn0,
                  static_cast<unsigned long long>(none_err[max_ebn0]),
                  static_cast<unsigned long long>(base_err[max_ebn0])));
    }

    // --- 6: PSD ------------------------------------------------------------------
    {
        const PsdTable psd = run_psd_experiment(setup, bank);
        double worst_match = 0.0;
        for (std::size_t i = 0; i < psd.freq_subcarriers.size(); ++i) {
            // ignore bins at the numerical dust floor of the clean signal
            if (std::max(psd.none_db[i], psd.virtual_db[i]) <= -120.0) continue;
            worst_match =
                std::max(worst_match, std::abs(psd.none_db[i] - psd.virtual_db[i]));
        }
        check("6a", worst_match <= 0.5,
              fmt("virtual (no truncation) vs original: per-bin max |diff| %.3f dB "
                  "(want <= 0.5, %d bursts)",
                  worst_match, setup.psd_bursts));

        const int bins_per_sc = setup.psd_fft / setup.burst.M;
        const long half = static_cast<long>(setup.psd_fft) / 2;
        const auto above = static_cast<std::size_t>(half + 100 * bins_per_sc);
        const auto below = static_cast<std::size_t>(half - 101 * bins_per_sc);
        const double worst_adjacent = std::max(psd.virtual_truncate_db[above],
                                               psd.virtual_truncate_db[below]);
        check("6b", worst_adjacent <= -38.0,
              fmt("virtual+truncate at the first adjacent carrier centers %.1f dB "
                  "(want <= -38)",
                  worst_adjacent));
    }

    // --- 7: PAPR --------------------------------------------------------------------
    {
        const PaprTable papr = run_papr_experiment(setup, bank);
        const double c_none =
            ccdf_crossing_db(papr.thresholds_db, papr.ccdf_none, 1e-2);
        const double c_virt =
            ccdf_crossing_db(papr.thresholds_db, papr.ccdf_virtual, 1e-2);
        check("7", std::abs(c_virt - c_none) <= 0.3 && setup.papr_bursts >= 10'000,
              fmt("PAPR at CCDF 1e-2: original %.2f dB, shortened %.2f dB, "
                  "|diff| %.3f dB (want <= 0.3, %d bursts)",
                  c_none, c_virt, std::abs(c_virt - c_none), setup.papr_bursts));
    }

    // --- 10: CLI determinism -----------------------------------------------------
    if (argc > 1) {
        const std::string tool = argv[1];
        const auto dir =
            std::filesystem::temp_directory_path() / "fbmc_acceptance_cli";
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
        const std::string cfg_path = (dir / "det.ini").string();
        {
            std::ofstream cfg(cfg_path);
            cfg << "[sweep]\ngamma_grid = 0.005, 0.1\nbursts = 20\n"
                   "[run]\nseed = 11\n";
        }
        auto run_once = [&](const std::string& out, int threads) {
            const std::string cmd = tool + " sweep-gamma --config " + cfg_path +
                                    " --out " + (dir / out).string() +
                                    " --threads " + std::to_string(threads) +
                                    " > /dev/null 2>&1";
            return std::system(cmd.c_str()) == 0;
        };
        const bool ran = run_once("a", 2) && run_once("b", 4) && run_once("c", 2);
        const std::string a = read_file((dir / "a" / "sweep_gamma.csv").string());
        const std::string b = read_file((dir / "b" / "sweep_gamma.csv").string());
        const std::string c = read_file((dir / "c" / "sweep_gamma.csv").string());
        check("10", ran && !a.empty() && a == b && b == c,
              "repeated CLI runs with one seed are byte-identical "
              "(thread counts 2, 4, 2)");
        std::filesystem::remove_all(dir);
    } else {
        check("10", false, "tool path not supplied on the command line");
    }

    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
