#include "fbmc/design_cache.hpp"

#include <array>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace fbmc {

namespace {

constexpr char kMagic[8] = {'F', 'B', 'M', 'C', 'D', 'S', 'G', '1'};
constexpr std::uint32_t kVersion = 1;

// Serialized little-endian; this code targets little-endian hosts and
// the loader re-checks the magic rather than byte-swapping.
struct Header {
    char magic[8];
    std::uint32_t version;
    std::uint32_t flags;  // bit 0: pseudo-inverse fallback
    std::uint64_t config_hash;
    std::int32_t edge;
    std::int32_t q0;
    std::int64_t rows;
    std::int64_t cols;
    std::int64_t out_lo, out_hi, in_lo, in_hi;
    double gamma;
    double weight;
    double cond_estimate;
    double normal_residual;
};

}  // namespace

void save_design(const std::string& path, const CancellationDesign& design) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write design cache: " + path);

    Header h{};
    std::memcpy(h.magic, kMagic, sizeof(kMagic));
    h.version = kVersion;
    h.flags = design.used_pseudo_inverse ? 1u : 0u;
    h.config_hash = design.config_hash;
    h.edge = design.edge == Edge::tail ? 1 : 0;
    h.q0 = design.q0;
    h.rows = design.B.rows();
    h.cols = design.B.cols();
    h.out_lo = design.out_lo;
    h.out_hi = design.out_hi;
    h.in_lo = design.in_lo;
    h.in_hi = design.in_hi;
    h.gamma = design.gamma;
    h.weight = design.weight;
    h.cond_estimate = design.cond_estimate;
    h.normal_residual = design.normal_residual;
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));

    std::vector<double> row(static_cast<std::size_t>(design.B.cols()));
    for (Eigen::Index r = 0; r < design.B.rows(); ++r) {
        for (Eigen::Index c = 0; c < design.B.cols(); ++c)
            row[static_cast<std::size_t>(c)] = design.B(r, c);
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(double)));
    }
    if (!out) throw IoError("short write to design cache: " + path);
}

CancellationDesign load_design(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open design cache: " + path);
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError("not a design cache file: " + path);
    if (h.version != kVersion)
        throw IoError("unsupported design cache version in " + path);
    if (h.rows < 0 || h.cols < 0)
        throw IoError("corrupt design cache header in " + path);

    CancellationDesign d;
    d.edge = h.edge ? Edge::tail : Edge::head;
    d.q0 = h.q0;
    d.out_lo = h.out_lo;
    d.out_hi = h.out_hi;
    d.in_lo = h.in_lo;
    d.in_hi = h.in_hi;
    d.config_hash = h.config_hash;
    d.gamma = h.gamma;
    d.weight = h.weight;
    d.cond_estimate = h.cond_estimate;
    d.normal_residual = h.normal_residual;
    d.used_pseudo_inverse = (h.flags & 1u) != 0;
    d.B.resize(h.rows, h.cols);
    std::vector<double> row(static_cast<std::size_t>(h.cols));
    for (Eigen::Index r = 0; r < h.rows; ++r) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(double)));
        if (!in) throw IoError("truncated design cache: " + path);
        for (Eigen::Index c = 0; c < h.cols; ++c)
            d.B(r, c) = row[static_cast<std::size_t>(c)];
    }
    return d;
}

std::string design_cache_path(const std::string& dir, std::uint64_t config_hash,
                              Edge edge) {
    char name[64];
    std::snprintf(name, sizeof(name), "design_%016llx_%s.bin",
                  static_cast<unsigned long long>(config_hash),
                  edge == Edge::tail ? "tail" : "head");
    return (std::filesystem::path(dir) / name).string();
}

CancellationDesign load_or_build_design(const std::string& dir,
                                        const PrototypeFilter& filter,
                                        const BurstConfig& config, Edge edge,
                                        bool* hit) {
    const std::uint64_t hash = design_config_hash(filter, config, edge);
    const std::string path = design_cache_path(dir, hash, edge);
    if (std::filesystem::exists(path)) {
        CancellationDesign d = load_design(path);
        if (d.config_hash == hash && d.edge == edge) {
            if (hit) *hit = true;
            return d;
        }
    }
    if (hit) *hit = false;
    CancellationDesign d = build_design(filter, config, edge);
    std::filesystem::create_directories(dir);
    save_design(path, d);
    return d;
}

}  // namespace fbmc
