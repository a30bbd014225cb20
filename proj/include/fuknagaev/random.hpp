#pragma once

#include <cstdint>
#include <random>

namespace fuknagaev {

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based stream derivation: the seed of stream `index` depends only
/// on (seed, index), so work can be split across threads in any order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Engine make_engine(std::uint64_t seed, std::uint64_t index = 0);

/// Uniform on the open interval (0, 1) from the top 53 bits of one draw.
double uniform_open01(Engine& engine);

}  // namespace fuknagaev
