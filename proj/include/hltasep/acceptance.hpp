#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hltasep {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

constexpr int kCriterionCount = 10;
constexpr std::uint64_t kDefaultSeed = 20240601;

CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultSeed);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed, const std::vector<int>& ids = {});
// "criterion 3 PASS transition formula: ... (0.12 s)"
std::string format_result(const CriterionResult& r);

}  // namespace hltasep
