#include "fbmc/experiments.hpp"

#include <cmath>
#include <fstream>

#include "fbmc/util.hpp"

namespace fbmc {

namespace {

double mean_db(const std::vector<double>& linear) {
    double sum = 0.0;
    for (double v : linear) sum += v;
    const double mean = sum / static_cast<double>(linear.size());
    return mean > 0.0 ? 10.0 * std::log10(mean) : kDbFloor;
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write CSV: " + path);
    return out;
}

}  // namespace

const CancellationDesign& DesignBank::get(const PrototypeFilter& filter,
                                          const BurstConfig& config, Edge edge) {
    const std::uint64_t key = design_config_hash(filter, config, edge);
    auto it = store_.find(key);
    if (it == store_.end())
        it = store_.emplace(key, build_design(filter, config, edge)).first;
    return it->second;
}

std::vector<SweepRow> run_gamma_sweep(const ExperimentSetup& s, DesignBank& bank) {
    const QamMapper mapper(s.qam_order);
    const auto nb = static_cast<std::size_t>(s.sweep_bursts);

    // Common payload set across all rows.
    std::vector<ComplexSignal> bursts(nb);
    std::vector<double> refs(nb);
    parallel_for(nb, s.threads, [&](std::size_t i) {
        const Packet pkt = random_packet(s.burst, mapper, s.seed, i);
        bursts[i] = synthesize(pkt.grid, s.filter, s.burst);
        refs[i] = dbc_reference(bursts[i], s.burst);
    });

    std::vector<SweepRow> rows;
    {
        SweepRow row;
        row.untreated = true;
        std::vector<double> x1(nb);
        for (std::size_t i = 0; i < nb; ++i)
            x1[i] = bursts[i].energy_range(s.burst.burst_end + 1,
                                           bursts[i].end_index()) /
                    refs[i];
        row.xi1_dbc = mean_db(x1);
        row.xi2_dbc = kDbFloor;
        rows.push_back(row);
    }

    for (double gamma : s.sweep_gammas) {
        BurstConfig cfg = s.burst;
        cfg.gamma = gamma;
        const CancellationDesign& design = bank.get(s.filter, cfg, Edge::tail);
        std::vector<double> x1(nb), x2(nb);
        parallel_for(nb, s.threads, [&](std::size_t i) {
            const ApplyResult r = apply_design(bursts[i], design, s.filter, cfg);
            x1[i] = r.shortened.energy_range(cfg.burst_end + 1,
                                             r.shortened.end_index()) /
                    refs[i];
            x2[i] = r.cancellation.energy_range(design.in_lo, design.in_hi) /
                    refs[i];
        });
        SweepRow row;
        row.gamma = gamma;
        row.xi1_dbc = mean_db(x1);
        row.xi2_dbc = mean_db(x2);
        rows.push_back(row);
    }
    return rows;
}

std::vector<EvmRow> run_evm_experiment(const ExperimentSetup& s, DesignBank& bank) {
    const QamMapper mapper(s.qam_order);
    const auto nb = static_cast<std::size_t>(s.evm_bursts);

    std::vector<PamGrid> grids(nb);
    std::vector<ComplexSignal> clean(nb);
    parallel_for(nb, s.threads, [&](std::size_t i) {
        grids[i] = random_packet(s.burst, mapper, s.seed, i).grid;
        clean[i] = synthesize(grids[i], s.filter, s.burst);
    });

    auto evm_linear = [&](const PamGrid& in, const PamGrid& out) {
        return std::pow(10.0, edge_evm(in, out, s.burst, s.edge_depth) / 10.0);
    };

    std::vector<double> hard_r(nb), win_r(nb), none_r(nb);
    parallel_for(nb, s.threads, [&](std::size_t i) {
        const ComplexSignal h =
            hard_truncate(clean[i], s.burst.burst_begin, s.burst.burst_end);
        hard_r[i] = evm_linear(grids[i], demodulate(h, s.filter, s.burst));
        const ComplexSignal w =
            windowed_truncate(clean[i], s.burst.burst_begin, s.burst.burst_end,
                              s.window_rolloff);
        win_r[i] = evm_linear(grids[i], demodulate(w, s.filter, s.burst));
        none_r[i] = evm_linear(grids[i], demodulate(clean[i], s.filter, s.burst));
    });
    const double hard_db = mean_db(hard_r);
    const double windowed_db = mean_db(win_r);
    const double none_db = mean_db(none_r);

    std::vector<EvmRow> rows;
    for (double gamma : s.evm_gammas) {
        BurstConfig cfg = s.burst;
        cfg.gamma = gamma;
        const CancellationDesign& head = bank.get(s.filter, cfg, Edge::head);
        const CancellationDesign& tail = bank.get(s.filter, cfg, Edge::tail);
        std::vector<double> virt_r(nb);
        parallel_for(nb, s.threads, [&](std::size_t i) {
            ComplexSignal v = apply_design(clean[i], tail, s.filter, cfg).shortened;
            v = apply_design(v, head, s.filter, cfg).shortened;
            v = hard_truncate(v, cfg.burst_begin, cfg.burst_end);
            virt_r[i] = evm_linear(grids[i], demodulate(v, s.filter, cfg));
        });
        EvmRow row;
        row.gamma = gamma;
        row.virtual_truncate_db = mean_db(virt_r);
        row.hard_db = hard_db;
        row.windowed_db = windowed_db;
        row.none_db = none_db;
        rows.push_back(row);
    }
    return rows;
}

PaprTable run_papr_experiment(const ExperimentSetup& s, DesignBank& bank) {
    const QamMapper mapper(s.qam_order);
    const auto nb = static_cast<std::size_t>(s.papr_bursts);
    const CancellationDesign& head = bank.get(s.filter, s.burst, Edge::head);
    const CancellationDesign& tail = bank.get(s.filter, s.burst, Edge::tail);

    std::vector<double> p_none(nb), p_win(nb), p_virt(nb);
    parallel_for(nb, s.threads, [&](std::size_t i) {
        const PamGrid grid = random_packet(s.burst, mapper, s.seed, i).grid;
        const ComplexSignal clean = synthesize(grid, s.filter, s.burst);
        p_none[i] = papr_db(clean, s.burst.burst_begin, s.burst.burst_end);
        const ComplexSignal w = windowed_truncate(
            clean, s.burst.burst_begin, s.burst.burst_end, s.window_rolloff);
        p_win[i] = papr_db(w, s.burst.burst_begin, s.burst.burst_end);
        ComplexSignal v = apply_design(clean, tail, s.filter, s.burst).shortened;
        v = apply_design(v, head, s.filter, s.burst).shortened;
        p_virt[i] = papr_db(v, s.burst.burst_begin, s.burst.burst_end);
    });

    PaprTable table;
    for (double t = s.papr_min_db; t <= s.papr_max_db + 1e-12; t += s.papr_step_db)
        table.thresholds_db.push_back(t);
    table.ccdf_none = papr_ccdf(p_none, table.thresholds_db);
    table.ccdf_windowed = papr_ccdf(p_win, table.thresholds_db);
    table.ccdf_virtual = papr_ccdf(p_virt, table.thresholds_db);
    return table;
}

double ccdf_crossing_db(const std::vector<double>& thresholds,
                        const std::vector<double>& ccdf, double level) {
    if (thresholds.size() != ccdf.size() || thresholds.empty())
        throw ConfigError("ccdf_crossing_db: bad table");
    if (ccdf.front() < level) return thresholds.front();
    for (std::size_t i = 1; i < ccdf.size(); ++i) {
        if (ccdf[i] < level) {
            const double c0 = std::log10(std::max(ccdf[i - 1], 1e-12));
            const double c1 = std::log10(std::max(ccdf[i], 1e-12));
            const double cl = std::log10(level);
            const double f = (c0 - cl) / (c0 - c1);
            return thresholds[i - 1] + f * (thresholds[i] - thresholds[i - 1]);
        }
    }
    throw NumericalError("ccdf_crossing_db: CCDF never falls below level");
}

PsdTable run_psd_experiment(const ExperimentSetup& s, DesignBank& bank) {
    const QamMapper mapper(s.qam_order);
    const auto nb = static_cast<std::size_t>(s.psd_bursts);
    const CancellationDesign& head = bank.get(s.filter, s.burst, Edge::head);
    const CancellationDesign& tail = bank.get(s.filter, s.burst, Edge::tail);

    ShortenOptions opts;
    opts.head = &head;
    opts.tail = &tail;
    opts.window_rolloff = s.window_rolloff;

    // Same payloads for every method so per-bin comparisons share the
    // data realizations.
    auto ensemble = [&](Method method) {
        std::vector<ComplexSignal> out(nb);
        parallel_for(nb, s.threads, [&](std::size_t i) {
            const PamGrid grid = random_packet(s.burst, mapper, s.seed, i).grid;
            out[i] = shorten(grid, s.filter, s.burst, method, opts);
        });
        return psd_burst_ensemble(out, s.burst, s.psd_fft);
    };

    const PsdEstimate none = ensemble(Method::none);
    const PsdEstimate hard = ensemble(Method::hard);
    const PsdEstimate win = ensemble(Method::windowed);
    const PsdEstimate virt = ensemble(Method::virtual_symbols);
    const PsdEstimate virt_tr = ensemble(Method::virtual_truncate);

    PsdTable table;
    table.freq_subcarriers = none.freq_subcarriers;
    table.none_db = none.power_db;
    table.hard_db = hard.power_db;
    table.windowed_db = win.power_db;
    table.virtual_db = virt.power_db;
    table.virtual_truncate_db = virt_tr.power_db;
    return table;
}

std::vector<BerPoint> run_ber(const ExperimentSetup& s) {
    BerExperimentConfig cfg;
    cfg.burst = s.burst;
    cfg.qam_order = s.qam_order;
    cfg.ebn0_db = s.ber_ebn0_db;
    cfg.gammas = s.ber_gammas;
    cfg.min_bits = s.ber_min_bits;
    cfg.seed = s.seed;
    cfg.threads = s.threads;
    return run_ber_experiment(cfg, s.filter);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    auto out = open_csv(path);
    out << "gamma,xi1_dbc,xi2_dbc\n";
    for (const SweepRow& r : rows) {
        if (r.untreated)
            out << "inf";
        else
            out << format_double(r.gamma);
        out << ',' << format_double(r.xi1_dbc) << ',' << format_double(r.xi2_dbc)
            << '\n';
    }
}

void write_evm_csv(const std::string& path, const std::vector<EvmRow>& rows) {
    auto out = open_csv(path);
    out << "gamma,evm_virtual_truncate_db,evm_hard_db,evm_windowed_db,"
           "evm_none_db\n";
    for (const EvmRow& r : rows)
        out << format_double(r.gamma) << ',' << format_double(r.virtual_truncate_db)
            << ',' << format_double(r.hard_db) << ',' << format_double(r.windowed_db)
            << ',' << format_double(r.none_db) << '\n';
}

void write_ber_csv(const std::string& path, const std::vector<BerPoint>& rows) {
    auto out = open_csv(path);
    out << "ebn0_db,scenario,gamma,bits,bit_errors,ber\n";
    for (const BerPoint& r : rows)
        out << format_double(r.ebn0_db) << ',' << ber_scenario_name(r.scenario)
            << ',' << format_double(r.gamma) << ',' << r.bits << ',' << r.errors
            << ',' << format_double(r.ber()) << '\n';
}

void write_papr_csv(const std::string& path, const PaprTable& table) {
    auto out = open_csv(path);
    out << "papr_db,ccdf_none,ccdf_windowed,ccdf_virtual\n";
    for (std::size_t i = 0; i < table.thresholds_db.size(); ++i)
        out << format_double(table.thresholds_db[i]) << ','
            << format_double(table.ccdf_none[i]) << ','
            << format_double(table.ccdf_windowed[i]) << ','
            << format_double(table.ccdf_virtual[i]) << '\n';
}

void write_psd_csv(const std::string& path, const PsdTable& table) {
    auto out = open_csv(path);
    out << "freq_subcarriers,psd_none_db,psd_hard_db,psd_windowed_db,"
           "psd_virtual_db,psd_virtual_truncate_db\n";
    for (std::size_t i = 0; i < table.freq_subcarriers.size(); ++i)
        out << format_double(table.freq_subcarriers[i]) << ','
            << format_double(table.none_db[i]) << ','
            << format_double(table.hard_db[i]) << ','
            << format_double(table.windowed_db[i]) << ','
            << format_double(table.virtual_db[i]) << ','
            << format_double(table.virtual_truncate_db[i]) << '\n';
}

}  // namespace fbmc
