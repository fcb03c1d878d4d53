#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "hltasep/hall_littlewood.hpp"
#include "hltasep/partition.hpp"
#include "hltasep/particle.hpp"
#include "hltasep/rng.hpp"

namespace hltasep {

struct JumpEvent {
    double time;
    int index;           // particle index, or row index of the part that grew
    long long new_value; // position after the jump, or new part value
};

template <class State>
struct Trajectory {
    State initial;
    State final_state;
    std::vector<JumpEvent> events;
    std::uint64_t seed = 0;
    double horizon = 0.0;
};

using TasepTrajectory = Trajectory<ParticleConfig>;
using HLTrajectory = Trajectory<Partition>;

// Advance c by a Gillespie run of length horizon; returns the number of jumps.
// Total rate is 1, so waiting times are unit exponentials.
long long advance_ttasep(ParticleConfig& c, double t, double horizon, Rng& rng,
                         std::vector<JumpEvent>* log = nullptr);
TasepTrajectory simulate_ttasep(const ParticleConfig& c0, double t, double horizon, std::uint64_t seed);

struct BlockRate {
    int value;   // common part value k of the block (0 for new parts)
    int start;   // first row l of the block
    int count;   // rows in the block b
    double rate; // t^{l-1}(1 - t^b)/(1 - t)
};

// Aggregate rates of "some part equal to value grows by one", one entry per block.
std::vector<BlockRate> hl_part_rates(const Partition& lambda, double t, std::optional<int> n);

// Mutable parts list for fast event loops.
struct HLState {
    std::vector<int> parts;
    int length() const { return static_cast<int>(parts.size()); }
    // sum_{j<=r} lambda'_j
    long long conjugate_prefix(int r) const;
};

long long advance_hl(HLState& s, const HLParams& params, double horizon, Rng& rng,
                     std::vector<JumpEvent>* log = nullptr);
HLTrajectory simulate_hl(const Partition& lambda0, const HLParams& params, double horizon,
                         std::uint64_t seed);

// Rebuild the final state from the initial one and the event list.
ParticleConfig replay(const TasepTrajectory& tr);
Partition replay(const HLTrajectory& tr);

// CSV with header time,index,new_value.
void write_events_csv(std::ostream& out, const std::vector<JumpEvent>& events);

}  // namespace hltasep
