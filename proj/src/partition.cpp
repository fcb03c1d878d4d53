#include "hltasep/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace hltasep {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0)
            throw std::invalid_argument("partition parts must be positive (zeros only at the end)");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

Partition Partition::parse(std::string_view text) {
    std::vector<int> parts;
    if (text.empty()) return Partition();
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view tok = text.substr(pos, comma - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw std::invalid_argument("bad partition text: '" + std::string(text) + "'");
        parts.push_back(value);
        pos = comma + 1;
    }
    return Partition(std::move(parts));
}

std::string Partition::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::multiplicity(int value) const {
    if (value <= 0) return 0;
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), value));
}

std::vector<int> Partition::multiplicities() const {
    std::vector<int> m(parts_.empty() ? 1 : parts_.front() + 1, 0);
    for (int p : parts_) ++m[p];
    return m;
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return Partition();
    std::vector<int> conj(parts_.front(), 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j) ++conj[j];
    return Partition(std::move(conj));
}

long long Partition::n_weight() const {
    long long total = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) total += static_cast<long long>(i) * parts_[i];
    return total;
}

bool Partition::contains(const Partition& mu) const {
    if (mu.length() > length()) return false;
    for (int i = 1; i <= mu.length(); ++i)
        if (mu.part(i) > part(i)) return false;
    return true;
}

bool interlaces(const Partition& mu, const Partition& lambda) {
    const int len = std::max(mu.length(), lambda.length());
    for (int i = 1; i <= len; ++i) {
        if (lambda.part(i) < mu.part(i)) return false;
        if (mu.part(i) < lambda.part(i + 1)) return false;
    }
    return true;
}

namespace {

void partitions_rec(int remaining, int max_part, int slots, std::vector<int>& cur,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (slots == 0) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, slots - 1, cur, out);
        cur.pop_back();
    }
}

void interval_rec(const Partition& mu, const Partition& lambda, int row, int upper,
                  std::vector<int>& cur, std::vector<Partition>& out, std::size_t cap) {
    if (row > lambda.length()) {
        if (out.size() >= cap) throw std::length_error("partition interval exceeds cap");
        out.emplace_back(cur);
        return;
    }
    const int hi = std::min(upper, lambda.part(row));
    for (int v = hi; v >= mu.part(row); --v) {
        cur.push_back(v);
        interval_rec(mu, lambda, row + 1, v, cur, out, cap);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(int n, int max_length) {
    std::vector<Partition> out;
    if (n < 0) return out;
    std::vector<int> cur;
    partitions_rec(n, n, max_length, cur, out);
    return out;
}

std::vector<Partition> partitions_up_to(int max_size, int max_length) {
    std::vector<Partition> out;
    for (int n = 0; n <= max_size; ++n) {
        auto level = partitions_of(n, max_length);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<Partition> add_one_box(const Partition& lambda, int max_length) {
    std::vector<Partition> out;
    const auto& p = lambda.parts();
    for (int i = 0; i <= lambda.length(); ++i) {
        if (i == lambda.length()) {
            if (lambda.length() >= max_length) break;
            auto q = p;
            q.push_back(1);
            out.emplace_back(std::move(q));
        } else if (i == 0 || p[i - 1] > p[i]) {
            auto q = p;
            ++q[i];
            out.emplace_back(std::move(q));
        }
    }
    return out;
}

std::vector<Partition> interval(const Partition& mu, const Partition& lambda, std::size_t cap) {
    std::vector<Partition> out;
    if (!lambda.contains(mu)) return out;
    std::vector<int> cur;
    interval_rec(mu, lambda, 1, lambda.empty() ? 0 : lambda.part(1), cur, out, cap);
    return out;
}

}  // namespace hltasep
