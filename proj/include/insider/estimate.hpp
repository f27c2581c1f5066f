#pragma once

#include <cstdint>

namespace insider {

inline constexpr double kZ95 = 1.959964;

/// Running (count, mean, M2) with Chan's pairwise combination. Also tallies
/// exact zeros and a caller-defined event count.
struct MomentAccumulator {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::uint64_t zeros = 0;
    std::uint64_t events = 0;

    void add(double x) noexcept {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
        if (x == 0.0) ++zeros;
    }

    double variance() const noexcept {
        return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    }
};

MomentAccumulator merge(const MomentAccumulator& left, const MomentAccumulator& right) noexcept;

struct MCEstimate {
    std::uint64_t n = 0;
    double mean = 0.0;
    double sample_stddev = 0.0;
    double std_error = 0.0;       // sample_stddev / sqrt(n)
    double ci95_halfwidth = 0.0;  // kZ95 * std_error
    std::uint64_t seed = 0;
    double zero_fraction = 0.0;

    friend bool operator==(const MCEstimate&, const MCEstimate&) = default;
};

/// Throws Error{BadSampleCount} when acc.count < 2.
MCEstimate make_estimate(const MomentAccumulator& acc, std::uint64_t seed,
                         bool report_zero_fraction);

}  // namespace insider
