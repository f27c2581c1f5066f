#pragma once

#include <cstdint>
#include <optional>

#include "insider/estimate.hpp"
#include "insider/market_model.hpp"
#include "insider/wealth_samplers.hpp"

namespace insider {

/// Samples are grouped in blocks of this many consecutive indices. Block
/// moments are combined by a binary tree whose shape depends only on the
/// number of blocks, never on how blocks were spread over workers.
inline constexpr std::uint64_t kBlockSize = 4096;

/// Moments of the named sampler over sample indices [begin, end). `begin`
/// must be a multiple of kBlockSize. `workers` threads compute the blocks;
/// workers == 1 runs inline and is the reference path.
/// HonestFixed requires `allocation`.
MomentAccumulator accumulate_range(Trader trader, const MarketParams& p,
                                   std::optional<Allocation> allocation, std::uint64_t seed,
                                   std::uint64_t begin, std::uint64_t end, unsigned workers = 1);

/// Monte Carlo mean of S(T) for `trader` over indices 0..n-1. Bitwise
/// independent of `chunks` (the worker count).
MCEstimate estimate_mean(Trader trader, const MarketParams& p, std::uint64_t n,
                         std::uint64_t seed, unsigned chunks = 1,
                         std::optional<Allocation> allocation = std::nullopt);

struct EulerEstimate {
    MCEstimate estimate;
    std::uint64_t n_steps = 0;
    std::uint64_t clamp_count = 0;

    friend bool operator==(const EulerEstimate&, const EulerEstimate&) = default;
};

/// Monte Carlo mean of the forward Euler scheme with n_steps per path.
EulerEstimate estimate_forward_euler(const MarketParams& p, std::uint64_t n_steps,
                                     std::uint64_t n, std::uint64_t seed, unsigned chunks = 1);

/// (mean - reference) / std_error. A zero std_error yields 0 on an exact
/// match and throws Error{DegenerateEstimate} otherwise.
double z_score(const MCEstimate& est, double reference);

}  // namespace insider
