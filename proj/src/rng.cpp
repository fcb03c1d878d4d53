#include "hltasep/rng.hpp"

#include <cmath>

namespace hltasep {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t sub) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ splitmix64(sub + 0x85157af5ULL));
    return h;
}

Rng::Rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    engine_.seed(seq);
}

Rng::Rng(std::uint64_t master, std::uint64_t stream, std::uint64_t sub)
    : Rng(stream_seed(master, stream, sub)) {}

double Rng::uniform() {
    // (k + 0.5) / 2^53 never hits 0 or 1
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::normal() { return normal_(engine_); }

}  // namespace hltasep
