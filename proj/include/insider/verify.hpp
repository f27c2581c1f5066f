#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace insider {

inline constexpr std::uint64_t kArchivedSeed = 0x5EEDC0DE;
/// Second seed for the one permitted re-run of the Monte Carlo agreement
/// criterion.
inline constexpr std::uint64_t kBackupSeed = 0x5EEDC0DF;

struct VerifyConfig {
    std::uint64_t seed = kArchivedSeed;
    std::uint64_t backup_seed = kBackupSeed;
    unsigned workers = 1;
    std::uint64_t samples = 1'000'000;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

inline constexpr int kCriterionCount = 10;

/// Runs one numbered criterion (1..10).
CriterionResult run_criterion(int id, const VerifyConfig& config);

/// Runs the listed criteria in order (all ten when `ids` is empty).
std::vector<CriterionResult> run_verify(const VerifyConfig& config, std::vector<int> ids = {});

/// One "[PASS]"/"[FAIL]" line per criterion plus a summary line. Contains
/// no timings, so identical inputs give identical bytes.
std::string format_verify_report(const std::vector<CriterionResult>& results);

}  // namespace insider
