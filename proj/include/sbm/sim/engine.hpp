#pragma once

#include <cstdint>

#include "sbm/sim/particle_cloud.hpp"

namespace sbm {

// Addresses the random streams of one advance call. Particle k of the input cloud draws
// from RandomStream(seed, k, step, replicate), so results do not depend on scheduling.
struct StreamAddress {
    std::uint64_t seed = 0;
    std::uint32_t replicate = 0;
    std::uint32_t step = 0;
};

struct AdvanceStats {
    std::uint64_t two_offspring = 0;
    std::uint64_t zero_offspring = 0;
    std::uint64_t killed = 0;  // absorbed at the orthant boundary
};

// Advances every particle to `to_time` with the engine selected in the config.
ParticleCloud advance(const ParticleCloud& cloud, double to_time, const SimConfig& config,
                      const StreamAddress& address, AdvanceStats* stats = nullptr);

// Samples the time-h descendants of each particle directly: survival and family size of the
// linear birth-death process, the reconstructed genealogy as a coalescent point process, and
// Brownian positions along that tree. In the orthant each tree edge survives with the exact
// bridge non-crossing probability. Exact in law for any gap; no branching events are visited.
ParticleCloud advance_genealogy(const ParticleCloud& cloud, double to_time, const SimConfig& config,
                                const StreamAddress& address);

// Visits every branching event with exponential clocks and exact Gaussian increments. In the
// orthant, motion is cut into pieces of length <= dt with a bridge-crossing kill per piece.
ParticleCloud advance_events(const ParticleCloud& cloud, double to_time, const SimConfig& config,
                             const StreamAddress& address, AdvanceStats* stats = nullptr);

}  // namespace sbm
