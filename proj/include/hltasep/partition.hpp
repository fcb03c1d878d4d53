#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace hltasep {

// Integer partition stored as a weakly decreasing list of positive parts.
class Partition {
public:
    Partition() = default;
    // Trailing zeros are dropped; anything not weakly decreasing and nonnegative throws.
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    // "3,1,1" or "" for the empty partition.
    static Partition parse(std::string_view text);
    std::string to_string() const;

    const std::vector<int>& parts() const { return parts_; }
    // 1-based part, 0 beyond the length.
    int part(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }
    int length() const { return static_cast<int>(parts_.size()); }
    int size() const;
    bool empty() const { return parts_.empty(); }

    int multiplicity(int value) const;
    // m[i] = m_i for i = 1..largest part; m[0] unused (0).
    std::vector<int> multiplicities() const;
    Partition conjugate() const;
    // Sum over rows of (i-1)*lambda_i.
    long long n_weight() const;
    bool contains(const Partition& mu) const;

    auto operator<=>(const Partition&) const = default;
    bool operator==(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

// mu interlaces lambda (mu precedes lambda): lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ...
bool interlaces(const Partition& mu, const Partition& lambda);

// All partitions of n with at most max_length parts, in reverse lexicographic order.
std::vector<Partition> partitions_of(int n, int max_length = 1 << 30);
// All partitions of size <= max_size, grouped by size.
std::vector<Partition> partitions_up_to(int max_size, int max_length = 1 << 30);

// Partitions reached from lambda by adding one box, with at most max_length parts.
std::vector<Partition> add_one_box(const Partition& lambda, int max_length = 1 << 30);

// All kappa with mu inside kappa inside lambda. Throws std::length_error past cap.
std::vector<Partition> interval(const Partition& mu, const Partition& lambda,
                                std::size_t cap = 1000000);

}  // namespace hltasep
