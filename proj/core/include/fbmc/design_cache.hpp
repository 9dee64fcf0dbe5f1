#pragma once

#include <optional>
#include <string>

#include "fbmc/tailshort.hpp"

namespace fbmc {

/// Binary cache of one CancellationDesign: fixed header (magic, version,
/// dimensions, ranges, config hash) followed by the B matrix as
/// little-endian 64-bit floats, row major.
void save_design(const std::string& path, const CancellationDesign& design);
CancellationDesign load_design(const std::string& path);

/// Cache file name under `dir` for this configuration and edge.
std::string design_cache_path(const std::string& dir, std::uint64_t config_hash,
                              Edge edge);

/// Loads a cached design when present and hash-consistent, else builds and
/// stores it. `hit` reports whether the cache supplied the design.
CancellationDesign load_or_build_design(const std::string& dir,
                                        const PrototypeFilter& filter,
                                        const BurstConfig& config, Edge edge,
                                        bool* hit = nullptr);

}  // namespace fbmc
