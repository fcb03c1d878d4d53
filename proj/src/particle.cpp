#include "hltasep/particle.hpp"

#include <cmath>
#include <stdexcept>

#include "hltasep/hall_littlewood.hpp"

namespace hltasep {

ParticleConfig::ParticleConfig(std::vector<long long> front) : front_(std::move(front)) {
    for (std::size_t i = 0; i < front_.size(); ++i) {
        const long long k = static_cast<long long>(i) + 1;
        if (front_[i] < -k) throw std::invalid_argument("particle k must satisfy x_k >= -k");
        if (i > 0 && front_[i] >= front_[i - 1])
            throw std::invalid_argument("particle positions must be strictly decreasing");
    }
    trim();
}

void ParticleConfig::trim() {
    while (!front_.empty() && front_.back() == -static_cast<long long>(front_.size())) front_.pop_back();
}

long long ParticleConfig::position(int k) const {
    if (k < 1) throw std::out_of_range("particle index starts at 1");
    return k <= front_size() ? front_[k - 1] : -static_cast<long long>(k);
}

void ParticleConfig::jump(int k) {
    if (k > front_size() + 1) throw std::logic_error("packed particle cannot jump");
    if (k == front_size() + 1) front_.push_back(-static_cast<long long>(k));
    if (k > 1 && front_[k - 1] + 1 >= front_[k - 2]) throw std::logic_error("blocked particle jumped");
    ++front_[k - 1];
}

std::string ParticleConfig::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < front_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(front_[i]);
    }
    return out;
}

std::vector<JumpRate> ttasep_rates(const ParticleConfig& c, double t) {
    require_t(t);
    std::vector<JumpRate> out;
    const double lt = std::log(t);
    for (int k = 1; k <= c.front_size() + 1; ++k) {
        const double lead = std::exp(lt * static_cast<double>(c.shifted(k)));
        double rate = lead;
        if (k > 1) {
            const long long gap = c.position(k - 1) - c.position(k) - 1;
            rate = lead * -std::expm1(lt * static_cast<double>(gap));
        }
        if (rate > 0.0) out.push_back({k, rate});
    }
    return out;
}

}  // namespace hltasep
