#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fbmc/prototype.hpp"
#include "fbmc/types.hpp"

namespace fbmc {

/// Key/value config file with [section] headers, '#' or ';' comments, and
/// comma-separated lists. Keys are looked up as "section.key".
class Config {
  public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    long get_int(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

/// Experiment settings assembled from a config file over the built-in
/// defaults (M=256, 200 centered carriers, N=14, eta=4, V=6, gamma=0.1,
/// overhead M/4, 64-QAM).
struct ExperimentSetup {
    BurstConfig burst;
    PrototypeFilter filter;
    int qam_order = 64;
    long window_rolloff = 64;  // raised-cosine roll-off for the windowed method

    // sweep
    std::vector<double> sweep_gammas;
    int sweep_bursts = 200;

    // evm
    std::vector<double> evm_gammas;
    int evm_bursts = 200;
    int edge_depth = 1;

    // ber
    std::vector<double> ber_ebn0_db;
    std::vector<double> ber_gammas;
    std::uint64_t ber_min_bits = 2'000'000;

    // papr
    int papr_bursts = 10'000;
    double papr_min_db = 5.0, papr_max_db = 14.0, papr_step_db = 0.05;

    // psd
    int psd_bursts = 300;
    int psd_fft = 8192;

    std::uint64_t seed = 1;
    int threads = 0;  // 0: hardware concurrency

    static ExperimentSetup from_config(const Config& cfg);
};

}  // namespace fbmc
