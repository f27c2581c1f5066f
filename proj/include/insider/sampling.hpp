#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace insider {

/// Philox4x32-10 block: a keyed bijection on 128-bit counters.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based stream descriptor. The k-th draw is a pure function of
/// (seed, k), so any partition of the index space over workers produces the
/// same values.
class RngStream {
public:
    explicit constexpr RngStream(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t seed() const noexcept { return seed_; }

    /// 64 pseudorandom bits for counter `index`.
    std::uint64_t bits(std::uint64_t index) const noexcept;

    /// Uniform in the open interval (0, 1): (k + 1/2) 2^-52 for a 52-bit k.
    double uniform(std::uint64_t index) const noexcept;

private:
    std::uint64_t seed_;
};

/// Standard normal draw number `index` of the stream, through the inverse CDF.
double standard_normal(const RngStream& s, std::uint64_t index);

struct BrownianDraw {
    double terminal_value = 0.0;     // B_T
    std::vector<double> increments;  // empty unless drawn on a grid
};

/// B_T = sqrt(T) * standard_normal(s, index).
BrownianDraw brownian_terminal(const RngStream& s, std::uint64_t index, double horizon);

/// Increments over a uniform grid of n_steps on [0, T]; increment k uses
/// counter index * n_steps + k. Throws Error{IndexOverflow} when that range
/// leaves [0, 2^63 - 1].
BrownianDraw brownian_increments(const RngStream& s, std::uint64_t index, double horizon,
                                 std::uint64_t n_steps);

/// Allocation-free variant: writes out.size() increments for path `index`
/// and returns their sum.
double fill_brownian_increments(const RngStream& s, std::uint64_t index, double horizon,
                                std::span<double> out);

}  // namespace insider
