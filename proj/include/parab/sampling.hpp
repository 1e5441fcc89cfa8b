#ifndef PARAB_SAMPLING_HPP
#define PARAB_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "parab/linalg.hpp"

namespace parab {

// Radical-inverse (van der Corput) value of index in the given base.
double halton(std::uint64_t index, std::uint32_t base);

std::uint64_t splitmix64(std::uint64_t x);

// Seed substream: one global seed, per-module offsets keep runs reproducible.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t offset);

// Unit directions: the n coordinate axes followed by Halton/Box-Muller points
// (deterministic, no seed). count is the total number of directions returned
// and must be >= 1; if count <= n only axes are returned.
std::vector<Vec> unit_sphere_directions(int n, int count);

}  // namespace parab

#endif
