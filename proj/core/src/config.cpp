#include "fbmc/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace fbmc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key");
        cfg.values_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

bool Config::has(const std::string& key) const {
    return values_.count(lower(key)) != 0;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
    const auto it = values_.find(lower(key));
    return it == values_.end() ? fallback : it->second;
}

long Config::get_int(const std::string& key, long fallback) const {
    const auto it = values_.find(lower(key));
    if (it == values_.end()) return fallback;
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != it->second.size())
        throw ConfigError("config key " + key + ": expected integer, got '" +
                          it->second + "'");
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(lower(key));
    if (it == values_.end()) return fallback;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != it->second.size())
        throw ConfigError("config key " + key + ": expected number, got '" +
                          it->second + "'");
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(lower(key));
    if (it == values_.end()) return fallback;
    const std::string v = lower(it->second);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("config key " + key + ": expected boolean, got '" +
                      it->second + "'");
}

std::vector<double> Config::get_double_list(
    const std::string& key, const std::vector<double>& fallback) const {
    const auto it = values_.find(lower(key));
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty())
            throw ConfigError("config key " + key + ": empty list element");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size())
            throw ConfigError("config key " + key + ": bad list element '" +
                              tok + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ConfigError("config key " + key + ": empty list");
    return out;
}

ExperimentSetup ExperimentSetup::from_config(const Config& cfg) {
    ExperimentSetup s;
    const int M = static_cast<int>(cfg.get_int("waveform.samples_per_symbol", 256));
    const int eta = static_cast<int>(cfg.get_int("waveform.overlap", 4));
    const int N = static_cast<int>(cfg.get_int("waveform.n_pam", 14));
    const int active = static_cast<int>(cfg.get_int("waveform.active_carriers", 200));
    const int V = static_cast<int>(cfg.get_int("shorten.virtual_symbols", 6));
    const double gamma = cfg.get_double("shorten.gamma", 0.1);

    s.burst = BurstConfig::make(M, eta, N, active, V, gamma);
    const long overhead = cfg.get_int("shorten.overhead", M / 4);
    s.burst.set_boundaries_from_overhead(overhead);
    s.burst.validate();

    const std::string filter_kind = cfg.get_string("waveform.filter", "phydyas");
    if (filter_kind == "phydyas") {
        s.filter = phydyas_filter(M, eta);
    } else if (filter_kind.rfind("file:", 0) == 0) {
        s.filter = load_filter_file(filter_kind.substr(5), M);
        if (s.filter.overlap_factor != eta)
            throw ConfigError("filter file overlap factor does not match config");
    } else {
        throw ConfigError("waveform.filter must be 'phydyas' or 'file:<path>'");
    }

    s.qam_order = static_cast<int>(cfg.get_int("waveform.qam_order", 64));
    s.window_rolloff = cfg.get_int("shorten.window_rolloff", M / 4);

    s.sweep_gammas = cfg.get_double_list(
        "sweep.gamma_grid",
        {0.0, 1e-4, 3e-4, 1e-3, 3e-3, 5e-3, 1e-2, 3e-2, 0.1, 0.3, 1.0, 3.0, 10.0});
    s.sweep_bursts = static_cast<int>(cfg.get_int("sweep.bursts", 200));

    s.evm_gammas = cfg.get_double_list("evm.gamma_grid", {1e-3, 1e-2, 1e-1, 1.0});
    s.evm_bursts = static_cast<int>(cfg.get_int("evm.bursts", 200));
    s.edge_depth = static_cast<int>(cfg.get_int("evm.edge_depth", 1));

    s.ber_ebn0_db = cfg.get_double_list("ber.ebn0_db", {6.0, 10.0, 14.0, 18.0});
    s.ber_gammas = cfg.get_double_list("ber.gamma_grid", {0.1});
    s.ber_min_bits = static_cast<std::uint64_t>(
        cfg.get_int("ber.min_bits", 2'000'000));

    s.papr_bursts = static_cast<int>(cfg.get_int("papr.bursts", 10'000));
    s.papr_min_db = cfg.get_double("papr.min_db", 5.0);
    s.papr_max_db = cfg.get_double("papr.max_db", 14.0);
    s.papr_step_db = cfg.get_double("papr.step_db", 0.05);

    s.psd_bursts = static_cast<int>(cfg.get_int("psd.bursts", 300));
    s.psd_fft = static_cast<int>(cfg.get_int("psd.fft_size", 8192));

    s.seed = static_cast<std::uint64_t>(cfg.get_int("run.seed", 1));
    s.threads = static_cast<int>(cfg.get_int("run.threads", 0));
    return s;
}

}  // namespace fbmc
