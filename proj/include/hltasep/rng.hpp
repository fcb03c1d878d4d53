#pragma once

#include <cstdint>
#include <random>

namespace hltasep {

// SplitMix64 finalizer; used only to derive well-separated stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for stream (master, stream, sub). Distinct triples give unrelated engines,
// so ensembles do not depend on the order replicas are run in.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t sub = 0);

class Rng {
public:
    explicit Rng(std::uint64_t seed);
    Rng(std::uint64_t master, std::uint64_t stream, std::uint64_t sub = 0);

    // Uniform on the open interval (0,1), 53 random bits.
    double uniform();
    double exponential();  // unit rate
    double normal();
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace hltasep
