#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "hltasep/particle.hpp"
#include "hltasep/partition.hpp"
#include "hltasep/rng.hpp"

using namespace hltasep;

TEST(Partition, ConstructionDropsZerosAndValidates) {
    EXPECT_EQ(Partition({3, 1, 0, 0}).parts(), (std::vector<int>{3, 1}));
    EXPECT_TRUE(Partition({0, 0}).empty());
    EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
    EXPECT_THROW(Partition({2, -1}), std::invalid_argument);
}

TEST(Partition, ParseRoundTrip) {
    for (const char* s : {"", "1", "3,1,1", "5,5,2"}) EXPECT_EQ(Partition::parse(s).to_string(), s);
    EXPECT_EQ(Partition::parse("4,2"), Partition({4, 2}));
    EXPECT_THROW(Partition::parse("1,x"), std::invalid_argument);
    EXPECT_THROW(Partition::parse("1,2"), std::invalid_argument);
}

TEST(Partition, BasicStatistics) {
    const Partition p{4, 2, 2, 1};
    EXPECT_EQ(p.size(), 9);
    EXPECT_EQ(p.length(), 4);
    EXPECT_EQ(p.part(1), 4);
    EXPECT_EQ(p.part(5), 0);
    EXPECT_EQ(p.multiplicity(2), 2);
    EXPECT_EQ(p.multiplicity(3), 0);
    EXPECT_EQ(p.multiplicities(), (std::vector<int>{0, 1, 2, 0, 1}));
    // 0*4 + 1*2 + 2*2 + 3*1
    EXPECT_EQ(p.n_weight(), 9);
}

TEST(Partition, Conjugate) {
    EXPECT_EQ(Partition({4, 2}).conjugate(), Partition({2, 2, 1, 1}));
    EXPECT_EQ(Partition({3, 1, 1}).conjugate(), Partition({3, 1, 1}));
    EXPECT_EQ(Partition().conjugate(), Partition());
    for (const auto& p : partitions_up_to(9)) {
        EXPECT_EQ(p.conjugate().conjugate(), p);
        EXPECT_EQ(p.conjugate().size(), p.size());
    }
}

TEST(Partition, CountsMatchPartitionNumbers) {
    const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int n = 0; n <= 12; ++n) EXPECT_EQ(static_cast<int>(partitions_of(n).size()), p[n]) << n;
    // partitions of 6 with at most 2 parts: 6, 51, 42, 33
    EXPECT_EQ(partitions_of(6, 2).size(), 4u);
    EXPECT_EQ(partitions_up_to(5).size(), 1u + 1 + 2 + 3 + 5 + 7);
}

TEST(Partition, PartitionsAreDistinctAndOrdered) {
    const auto ps = partitions_of(8);
    std::set<Partition> seen(ps.begin(), ps.end());
    EXPECT_EQ(seen.size(), ps.size());
    EXPECT_EQ(ps.front(), Partition({8}));
    EXPECT_EQ(ps.back(), Partition({1, 1, 1, 1, 1, 1, 1, 1}));
}

TEST(Partition, Interlacing) {
    EXPECT_TRUE(interlaces(Partition({1}), Partition({2, 1})));
    EXPECT_TRUE(interlaces(Partition({2}), Partition({2, 1})));
    EXPECT_TRUE(interlaces(Partition({1, 1}), Partition({2, 1})));
    EXPECT_FALSE(interlaces(Partition({3}), Partition({2, 1})));
    EXPECT_FALSE(interlaces(Partition({2, 2}), Partition({2, 1})));
    EXPECT_FALSE(interlaces(Partition(), Partition({1, 1})));
    EXPECT_TRUE(interlaces(Partition(), Partition({5})));
}

TEST(Partition, AddOneBox) {
    const auto up = add_one_box(Partition({2, 1}));
    EXPECT_EQ(up, (std::vector<Partition>{Partition({3, 1}), Partition({2, 2}), Partition({2, 1, 1})}));
    EXPECT_EQ(add_one_box(Partition({2, 1}), 2).size(), 2u);
    EXPECT_EQ(add_one_box(Partition()), (std::vector<Partition>{Partition({1})}));
}

TEST(Partition, IntervalAndContainment) {
    EXPECT_TRUE(Partition({3, 2}).contains(Partition({2, 2})));
    EXPECT_FALSE(Partition({3, 2}).contains(Partition({1, 1, 1})));
    EXPECT_EQ(interval(Partition({1}), Partition({2, 1})).size(), 4u);
    EXPECT_TRUE(interval(Partition({2}), Partition({1, 1})).empty());
    // every partition inside the 3x3 box: C(6,3)
    EXPECT_EQ(interval(Partition(), Partition({3, 3, 3})).size(), 20u);
    EXPECT_THROW(interval(Partition(), Partition({6, 6, 6, 6, 6, 6}), 100), std::length_error);
}

TEST(ParticleConfig, PackedDefaultsAndJump) {
    ParticleConfig c;
    EXPECT_EQ(c.position(1), -1);
    EXPECT_EQ(c.position(7), -7);
    EXPECT_EQ(c.front_size(), 0);
    c.jump(1);
    EXPECT_EQ(c.position(1), 0);
    EXPECT_EQ(c.front_size(), 1);
    EXPECT_THROW(c.jump(3), std::logic_error);
    c.jump(2);
    EXPECT_EQ(c.position(2), -1);
    c.jump(1);
    EXPECT_EQ(c.shifted(1), 2);
    EXPECT_EQ(c.shifted(2), 1);
    EXPECT_EQ(c.shifted(3), 0);
}

TEST(ParticleConfig, ValidationAndTrim) {
    EXPECT_THROW(ParticleConfig({0, 0}), std::invalid_argument);
    EXPECT_THROW(ParticleConfig({-2}), std::invalid_argument);
    // packed tail is trimmed
    EXPECT_EQ(ParticleConfig({3, -2, -3}).front_size(), 1);
    EXPECT_EQ(ParticleConfig({3, -2, -3}), ParticleConfig({3}));
}

TEST(ParticleConfig, RatesSumToOne) {
    const double t = 0.3;
    const ParticleConfig c({5, 2, 1, -3});
    const auto rates = ttasep_rates(c, t);
    double total = 0.0;
    for (const auto& r : rates) total += r.rate;
    EXPECT_NEAR(total, 1.0, 1e-14);
    // blocked particle 3 has no rate
    for (const auto& r : rates) EXPECT_NE(r.index, 3);
}

TEST(ParticleConfig, RatesOfPackedState) {
    const auto rates = ttasep_rates(ParticleConfig(), 0.4);
    ASSERT_EQ(rates.size(), 1u);
    EXPECT_EQ(rates[0].index, 1);
    EXPECT_DOUBLE_EQ(rates[0].rate, 1.0);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a(7, 1, 2), b(7, 1, 2), c(7, 1, 3);
    for (int i = 0; i < 10; ++i) {
        const double u = a.uniform();
        EXPECT_EQ(u, b.uniform());
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
    EXPECT_NE(Rng(7, 1, 2).bits(), c.bits());
    EXPECT_NE(stream_seed(1, 2, 3), stream_seed(1, 3, 2));
}

TEST(Rng, UniformMoments) {
    Rng r(123);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        s += u;
        s2 += u * u;
    }
    EXPECT_NEAR(s / n, 0.5, 0.005);
    EXPECT_NEAR(s2 / n, 1.0 / 3.0, 0.005);
}
