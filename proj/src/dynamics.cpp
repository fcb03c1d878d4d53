#include "hltasep/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "hltasep/io.hpp"

namespace hltasep {

namespace {

// Smallest k in [1, F+1] with p_k < level; p is nonincreasing and p_{F+1} = 0.
int first_below(const ParticleConfig& c, double level) {
    int lo = 1, hi = c.front_size() + 1;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (static_cast<double>(c.shifted(mid)) < level)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

}  // namespace

long long advance_ttasep(ParticleConfig& c, double t, double horizon, Rng& rng,
                         std::vector<JumpEvent>* log) {
    require_t(t);
    if (horizon < 0.0) throw std::invalid_argument("horizon must be nonnegative");
    const double lt = std::log(t);
    long long jumps = 0;
    double time = 0.0;
    for (;;) {
        time += rng.exponential();
        if (time > horizon) break;
        // cumulative rate through particle k is t^{p_k}
        const double level = std::log(rng.uniform()) / lt;
        const int k = first_below(c, level);
        c.jump(k);
        ++jumps;
        if (log) log->push_back({time, k, c.position(k)});
    }
    return jumps;
}

TasepTrajectory simulate_ttasep(const ParticleConfig& c0, double t, double horizon, std::uint64_t seed) {
    TasepTrajectory tr;
    tr.initial = c0;
    tr.final_state = c0;
    tr.seed = seed;
    tr.horizon = horizon;
    Rng rng(seed);
    advance_ttasep(tr.final_state, t, horizon, rng, &tr.events);
    return tr;
}

std::vector<BlockRate> hl_part_rates(const Partition& lambda, double t, std::optional<int> n) {
    require_t(t);
    if (n && lambda.length() > *n) throw std::invalid_argument("partition has more parts than rows");
    std::vector<BlockRate> out;
    const double lt = std::log(t);
    int row = 1;
    while (row <= lambda.length()) {
        const int value = lambda.part(row);
        int b = 0;
        while (lambda.part(row + b) == value) ++b;
        const double rate = std::exp(lt * (row - 1)) * -std::expm1(lt * b) / (1.0 - t);
        out.push_back({value, row, b, rate});
        row += b;
    }
    const int len = lambda.length();
    if (!n) {
        out.push_back({0, len + 1, -1, std::exp(lt * len) / (1.0 - t)});
    } else if (len < *n) {
        const int b = *n - len;
        out.push_back({0, len + 1, b, std::exp(lt * len) * -std::expm1(lt * b) / (1.0 - t)});
    }
    return out;
}

long long HLState::conjugate_prefix(int r) const {
    long long total = 0;
    for (int p : parts) total += p < r ? p : r;
    return total;
}

long long advance_hl(HLState& s, const HLParams& params, double horizon, Rng& rng,
                     std::vector<JumpEvent>* log) {
    require_t(params.t);
    if (horizon < 0.0) throw std::invalid_argument("horizon must be nonnegative");
    if (params.n && s.length() > *params.n) throw std::invalid_argument("partition has more parts than rows");
    const double lt = std::log(params.t);
    const double rate = params.total_rate();
    const double tail = params.n ? -std::expm1(lt * *params.n) : 1.0;  // 1 - t^n
    long long jumps = 0;
    double time = 0.0;
    for (;;) {
        time += rng.exponential() / rate;
        if (time > horizon) break;
        // ringing row is geometric with P(i) proportional to t^{i-1}, i <= n
        const double u = rng.uniform();
        long long i = 1 + static_cast<long long>(std::floor(std::log1p(-u * tail) / lt));
        if (i < 1) i = 1;
        if (params.n && i > *params.n) i = *params.n;
        int row;
        if (i > s.length()) {
            s.parts.push_back(1);
            row = s.length();
        } else {
            const int value = s.parts[i - 1];
            // first row holding this value
            int lo = 0, hi = static_cast<int>(i - 1);
            while (lo < hi) {
                const int mid = (lo + hi) / 2;
                if (s.parts[mid] == value)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            ++s.parts[lo];
            row = lo + 1;
        }
        ++jumps;
        if (log) log->push_back({time, row, s.parts[row - 1]});
    }
    return jumps;
}

HLTrajectory simulate_hl(const Partition& lambda0, const HLParams& params, double horizon,
                         std::uint64_t seed) {
    HLTrajectory tr;
    tr.initial = lambda0;
    tr.seed = seed;
    tr.horizon = horizon;
    HLState s{lambda0.parts()};
    Rng rng(seed);
    advance_hl(s, params, horizon, rng, &tr.events);
    tr.final_state = Partition(s.parts);
    return tr;
}

ParticleConfig replay(const TasepTrajectory& tr) {
    ParticleConfig c = tr.initial;
    double last = -1.0;
    for (const auto& e : tr.events) {
        if (!(e.time > last)) throw std::logic_error("event times must increase");
        last = e.time;
        c.jump(e.index);
        if (c.position(e.index) != e.new_value) throw std::logic_error("replay mismatch");
    }
    return c;
}

Partition replay(const HLTrajectory& tr) {
    std::vector<int> parts = tr.initial.parts();
    double last = -1.0;
    for (const auto& e : tr.events) {
        if (!(e.time > last)) throw std::logic_error("event times must increase");
        last = e.time;
        const std::size_t row = static_cast<std::size_t>(e.index);
        if (row == parts.size() + 1) parts.push_back(0);
        if (row < 1 || row > parts.size()) throw std::logic_error("replay row out of range");
        ++parts[row - 1];
        if (parts[row - 1] != e.new_value) throw std::logic_error("replay mismatch");
    }
    return Partition(std::move(parts));
}

void write_events_csv(std::ostream& out, const std::vector<JumpEvent>& events) {
    out << "time,index,new_value\n";
    for (const auto& e : events) out << format_double(e.time) << ',' << e.index << ',' << e.new_value << '\n';
}

}  // namespace hltasep
