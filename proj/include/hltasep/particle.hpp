#pragma once

#include <string>
#include <vector>

namespace hltasep {

// x_1 > x_2 > ... > x_F stored explicitly; x_k = -k for every k > F.
class ParticleConfig {
public:
    ParticleConfig() = default;
    explicit ParticleConfig(std::vector<long long> front);
    static ParticleConfig packed() { return ParticleConfig(); }

    long long position(int k) const;  // 1-based
    int front_size() const { return static_cast<int>(front_.size()); }
    const std::vector<long long>& front() const { return front_; }
    // p_k = x_k + k; nonincreasing in k and 0 beyond the front.
    long long shifted(int k) const { return position(k) + k; }

    void jump(int k);
    std::string to_string() const;

    bool operator==(const ParticleConfig&) const = default;

private:
    void trim();
    std::vector<long long> front_;
};

struct JumpRate {
    int index;
    double rate;
};

// Nonzero jump rates, particles 1..F+1.
std::vector<JumpRate> ttasep_rates(const ParticleConfig& c, double t);

}  // namespace hltasep
