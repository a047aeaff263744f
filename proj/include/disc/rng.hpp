#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace disc {

// All randomness in a run flows from one config seed. Independent consumers
// (parameter init, shuffling, data synthesis, ...) get their own stream by
// name so adding one consumer never perturbs another.
std::mt19937_64 seeded_rng(std::uint64_t seed, std::string_view stream);

}  // namespace disc
