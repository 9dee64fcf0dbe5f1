#pragma once

#include <string>
#include <vector>

#include "fbmc/config.hpp"
#include "fbmc/design_cache.hpp"
#include "fbmc/metrics.hpp"
#include "fbmc/sim.hpp"

namespace fbmc {

/// In-process design store keyed by config hash; avoids rebuilding the
/// same solver matrix across experiment steps.
class DesignBank {
  public:
    const CancellationDesign& get(const PrototypeFilter& filter,
                                  const BurstConfig& config, Edge edge);

    const std::map<std::uint64_t, CancellationDesign>& all() const {
        return store_;
    }

  private:
    std::map<std::uint64_t, CancellationDesign> store_;
};

struct SweepRow {
    double gamma = 0.0;
    bool untreated = false;  // no-shortening reference row
    double xi1_dbc = 0.0;
    double xi2_dbc = 0.0;
};

/// Mean residual-tail and cancellation energies per gamma (tail edge),
/// averaged over `bursts` random payloads. Row 0 is the untreated
/// reference.
std::vector<SweepRow> run_gamma_sweep(const ExperimentSetup& s, DesignBank& bank);

struct EvmRow {
    double gamma = 0.0;
    double virtual_truncate_db = 0.0;
    double hard_db = 0.0;      // constant across gamma
    double windowed_db = 0.0;  // constant across gamma
    double none_db = 0.0;      // full-support round trip floor
};

std::vector<EvmRow> run_evm_experiment(const ExperimentSetup& s, DesignBank& bank);

struct PaprTable {
    std::vector<double> thresholds_db;
    std::vector<double> ccdf_none;
    std::vector<double> ccdf_windowed;
    std::vector<double> ccdf_virtual;
};

PaprTable run_papr_experiment(const ExperimentSetup& s, DesignBank& bank);

/// Threshold where the CCDF crosses `level` (log-linear interpolation).
double ccdf_crossing_db(const std::vector<double>& thresholds,
                        const std::vector<double>& ccdf, double level);

struct PsdTable {
    std::vector<double> freq_subcarriers;
    std::vector<double> none_db;
    std::vector<double> hard_db;
    std::vector<double> windowed_db;
    std::vector<double> virtual_db;
    std::vector<double> virtual_truncate_db;
};

PsdTable run_psd_experiment(const ExperimentSetup& s, DesignBank& bank);

std::vector<BerPoint> run_ber(const ExperimentSetup& s);

// CSV writers; schemas are fixed per subcommand.
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_evm_csv(const std::string& path, const std::vector<EvmRow>& rows);
void write_ber_csv(const std::string& path, const std::vector<BerPoint>& rows);
void write_papr_csv(const std::string& path, const PaprTable& table);
void write_psd_csv(const std::string& path, const PsdTable& table);

}  // namespace fbmc
