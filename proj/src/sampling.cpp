#include "insider/sampling.hpp"

#include <cmath>
#include <limits>

#include "insider/error.hpp"
#include "insider/special_functions.hpp"

namespace insider {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

constexpr std::uint64_t kMaxIndex = std::numeric_limits<std::int64_t>::max();

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

std::uint64_t RngStream::bits(std::uint64_t index) const noexcept {
    const auto out = philox4x32_10(
        {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0u, 0u},
        {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

double RngStream::uniform(std::uint64_t index) const noexcept {
    constexpr double kScale = 0x1.0p-52;
    return (static_cast<double>(bits(index) >> 12) + 0.5) * kScale;
}

double standard_normal(const RngStream& s, std::uint64_t index) {
    return inverse_normal_cdf(s.uniform(index));
}

BrownianDraw brownian_terminal(const RngStream& s, std::uint64_t index, double horizon) {
    return BrownianDraw{std::sqrt(horizon) * standard_normal(s, index), {}};
}

double fill_brownian_increments(const RngStream& s, std::uint64_t index, double horizon,
                                std::span<double> out) {
    const std::uint64_t n_steps = out.size();
    if (n_steps == 0 || index > kMaxIndex / n_steps ||
        index * n_steps > kMaxIndex - (n_steps - 1)) {
        throw Error(ErrorCode::IndexOverflow, "index",
                    "path index * n_steps exceeds the 2^63 - 1 counter range");
    }
    const double scale = std::sqrt(horizon / static_cast<double>(n_steps));
    const std::uint64_t base = index * n_steps;
    double sum = 0.0;
    for (std::uint64_t k = 0; k < n_steps; ++k) {
        out[k] = scale * standard_normal(s, base + k);
        sum += out[k];
    }
    return sum;
}

BrownianDraw brownian_increments(const RngStream& s, std::uint64_t index, double horizon,
                                 std::uint64_t n_steps) {
    if (n_steps == 0) {
        throw Error(ErrorCode::InvalidSpec, "n_steps", "n_steps must be >= 1");
    }
    BrownianDraw draw;
    draw.increments.resize(n_steps);
    draw.terminal_value = fill_brownian_increments(s, index, horizon, draw.increments);
    return draw;
}

}  // namespace insider
