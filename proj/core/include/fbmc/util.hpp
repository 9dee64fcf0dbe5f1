#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace fbmc {

std::uint64_t fnv1a64(const void* data, std::size_t size,
                      std::uint64_t seed = 0xcbf29ce484222325ull);

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Independent engine for (seed, stream); used to split one experiment
/// seed into per-packet streams that stay stable under parallelism.
inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

/// Runs fn(i) for i in [0, n) on up to n_threads workers. Outputs must go
/// to per-index storage; reductions happen after the join, in index order.
void parallel_for(std::size_t n, int n_threads,
                  const std::function<void(std::size_t)>& fn);

/// Shortest decimal form that round-trips a double; stable across runs.
std::string format_double(double v);

}  // namespace fbmc
