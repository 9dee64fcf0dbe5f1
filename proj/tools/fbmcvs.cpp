// Experiment front end: builds cancellation designs and emits one CSV per
// experiment (tail-energy sweep, edge EVM, BER, PAPR CCDF, PSD).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fbmc/design_cache.hpp"
#include "fbmc/experiments.hpp"
#include "fbmc/util.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    long seed = -1;
    int threads = 0;
    bool verbose = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config file");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--threads", args.threads, "worker threads (0 = auto)");
    cmd->add_flag("--verbose", args.verbose, "progress chatter on stderr");
}

fbmc::ExperimentSetup make_setup(const CommonArgs& args) {
    fbmc::Config cfg;
    if (!args.config_path.empty()) cfg = fbmc::Config::parse_file(args.config_path);
    fbmc::ExperimentSetup s = fbmc::ExperimentSetup::from_config(cfg);
    if (args.seed >= 0) s.seed = static_cast<std::uint64_t>(args.seed);
    if (args.threads > 0) s.threads = args.threads;
    std::filesystem::create_directories(args.out_dir);
    return s;
}

std::string out_path(const CommonArgs& args, const char* name) {
    return (std::filesystem::path(args.out_dir) / name).string();
}

void note(const CommonArgs& args, const std::string& msg) {
    if (args.verbose) std::cerr << "fbmcvs: " << msg << '\n';
}

int run_design(const CommonArgs& args) {
    const fbmc::ExperimentSetup s = make_setup(args);
    for (const fbmc::Edge edge : {fbmc::Edge::head, fbmc::Edge::tail}) {
        bool hit = false;
        const fbmc::CancellationDesign d =
            fbmc::load_or_build_design(args.out_dir, s.filter, s.burst, edge, &hit);
        std::printf("%s design: B %ld x %ld, gamma %.6g (weight %.6g), "
                    "cond ~%.3g, normal residual %.3g%s%s\n",
                    edge == fbmc::Edge::tail ? "tail" : "head",
                    static_cast<long>(d.B.rows()), static_cast<long>(d.B.cols()),
                    d.gamma, d.weight, d.cond_estimate, d.normal_residual,
                    d.used_pseudo_inverse ? ", pseudo-inverse fallback" : "",
                    hit ? ", cache hit" : "");
    }
    return 0;
}

int run_sweep(const CommonArgs& args) {
    const fbmc::ExperimentSetup s = make_setup(args);
    fbmc::DesignBank bank;
    note(args, "building designs and sweeping gamma");
    const auto rows = fbmc::run_gamma_sweep(s, bank);
    fbmc::write_sweep_csv(out_path(args, "sweep_gamma.csv"), rows);
    note(args, "wrote sweep_gamma.csv");
    return 0;
}

int run_evm(const CommonArgs& args) {
    const fbmc::ExperimentSetup s = make_setup(args);
    fbmc::DesignBank bank;
    const auto rows = fbmc::run_evm_experiment(s, bank);
    fbmc::write_evm_csv(out_path(args, "evm.csv"), rows);
    note(args, "wrote evm.csv");
    return 0;
}

int run_ber_cmd(const CommonArgs& args) {
    const fbmc::ExperimentSetup s = make_setup(args);
    const auto rows = fbmc::run_ber(s);
    fbmc::write_ber_csv(out_path(args, "ber.csv"), rows);
    note(args, "wrote ber.csv");
    return 0;
}

int run_papr(const CommonArgs& args) {
    const fbmc::ExperimentSetup s = make_setup(args);
    fbmc::DesignBank bank;
    const auto table = fbmc::run_papr_experiment(s, bank);
    fbmc::write_papr_csv(out_path(args, "papr.csv"), table);
    note(args, "wrote papr.csv");
    return 0;
}

int run_psd(const CommonArgs& args) {
    const fbmc::ExperimentSetup s = make_setup(args);
    fbmc::DesignBank bank;
    const auto table = fbmc::run_psd_experiment(s, bank);
    fbmc::write_psd_csv(out_path(args, "psd.csv"), table);
    note(args, "wrote psd.csv");
    return 0;
}

int run_roundtrip(const CommonArgs& args) {
    const fbmc::ExperimentSetup s = make_setup(args);
    const fbmc::QamMapper mapper(s.qam_order);
    double worst = fbmc::kDbFloor;
    const int bursts = 10;
    for (int i = 0; i < bursts; ++i) {
        const fbmc::Packet pkt =
            fbmc::random_packet(s.burst, mapper, s.seed, static_cast<std::uint64_t>(i));
        const fbmc::ComplexSignal sig = fbmc::synthesize(pkt.grid, s.filter, s.burst);
        const fbmc::PamGrid back = fbmc::demodulate(sig, s.filter, s.burst);
        worst = std::max(worst, fbmc::edge_evm(pkt.grid, back, s.burst,
                                               s.burst.N / 2));
    }
    const double orth = fbmc::orthogonality_report(s.filter);
    std::ofstream csv(out_path(args, "roundtrip.csv"), std::ios::binary);
    csv << "metric,value\n";
    csv << "roundtrip_worst_evm_db," << fbmc::format_double(worst) << '\n';
    csv << "orthogonality_db," << fbmc::format_double(orth) << '\n';
    std::printf("round-trip worst EVM %.2f dB, orthogonality %.2f dB\n", worst, orth);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FBMC-OQAM burst tail-shortening experiments"};
    app.require_subcommand(1);

    CommonArgs args;
    int (*runner)(const CommonArgs&) = nullptr;

    for (const auto& [name, desc, fn] :
         {std::tuple{"design", "precompute and cache the edge designs", &run_design},
          std::tuple{"sweep-gamma", "residual vs cancellation energy sweep", &run_sweep},
          std::tuple{"evm", "edge-symbol EVM per method", &run_evm},
          std::tuple{"ber", "link BER with overlapping packets", &run_ber_cmd},
          std::tuple{"papr", "PAPR CCDF per method", &run_papr},
          std::tuple{"psd", "PSD per method", &run_psd},
          std::tuple{"roundtrip", "noise-free modem self check", &run_roundtrip}}) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        add_common(cmd, args);
        cmd->callback([&runner, fn] { runner = fn; });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        return runner(args);
    } catch (const fbmc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const fbmc::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const fbmc::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
