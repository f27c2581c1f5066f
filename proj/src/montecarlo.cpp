#include "insider/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "insider/closed_form.hpp"
#include "insider/error.hpp"

namespace insider {

MomentAccumulator merge(const MomentAccumulator& left, const MomentAccumulator& right) noexcept {
    if (left.count == 0) return right;
    if (right.count == 0) return left;
    MomentAccumulator out;
    out.count = left.count + right.count;
    const double n = static_cast<double>(out.count);
    const double nl = static_cast<double>(left.count);
    const double nr = static_cast<double>(right.count);
    const double delta = right.mean - left.mean;
    out.mean = left.mean + delta * (nr / n);
    out.m2 = left.m2 + right.m2 + delta * delta * (nl * nr / n);
    out.zeros = left.zeros + right.zeros;
    out.events = left.events + right.events;
    return out;
}

MCEstimate make_estimate(const MomentAccumulator& acc, std::uint64_t seed,
                         bool report_zero_fraction) {
    if (acc.count < 2) {
        throw Error(ErrorCode::BadSampleCount, "n", "an estimate needs at least 2 samples");
    }
    MCEstimate est;
    est.n = acc.count;
    est.mean = acc.mean;
    est.sample_stddev = std::sqrt(acc.variance());
    est.std_error = est.sample_stddev / std::sqrt(static_cast<double>(acc.count));
    est.ci95_halfwidth = kZ95 * est.std_error;
    est.seed = seed;
    est.zero_fraction =
        report_zero_fraction ? static_cast<double>(acc.zeros) / static_cast<double>(acc.count)
                             : 0.0;
    return est;
}

namespace {

using BlockFn = std::function<MomentAccumulator(std::uint64_t begin, std::uint64_t end)>;

MomentAccumulator merge_tree(const std::vector<MomentAccumulator>& blocks, std::size_t lo,
                             std::size_t hi) {
    if (hi - lo == 1) return blocks[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return merge(merge_tree(blocks, lo, mid), merge_tree(blocks, mid, hi));
}

MomentAccumulator run_blocks(std::uint64_t begin, std::uint64_t end, unsigned workers,
                             const BlockFn& block_fn) {
    if (begin % kBlockSize != 0) {
        throw Error(ErrorCode::InvalidSpec, "begin", "range start must be block aligned");
    }
    if (end <= begin) return {};
    const std::uint64_t n_blocks = (end - begin + kBlockSize - 1) / kBlockSize;
    std::vector<MomentAccumulator> blocks(n_blocks);
    auto compute = [&](std::uint64_t b) {
        const std::uint64_t lo = begin + b * kBlockSize;
        blocks[b] = block_fn(lo, std::min(end, lo + kBlockSize));
    };

    const unsigned n_workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, n_blocks));
    if (n_workers == 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) compute(b);
    } else {
        std::vector<std::exception_ptr> errors(n_workers);
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t b = w; b < n_blocks; b += n_workers) compute(b);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    return merge_tree(blocks, 0, blocks.size());
}

}  // namespace

MomentAccumulator accumulate_range(Trader trader, const MarketParams& p,
                                   std::optional<Allocation> allocation, std::uint64_t seed,
                                   std::uint64_t begin, std::uint64_t end, unsigned workers) {
    const RngStream stream(seed);
    Allocation alloc{};
    switch (trader) {
        case Trader::HonestFixed:
            if (!allocation) {
                throw Error(ErrorCode::InvalidSpec, "allocation",
                            "honest-fixed trader needs an allocation");
            }
            alloc = *allocation;
            break;
        case Trader::HonestOptimal:
            alloc = honest_optimal_allocation(p);
            break;
        default:
            break;
    }

    auto sample = [&](std::uint64_t i) -> double {
        const BrownianDraw draw = brownian_terminal(stream, i, p.horizon);
        switch (trader) {
            case Trader::HonestFixed:
            case Trader::HonestOptimal:
                return honest_terminal_wealth(p, alloc, draw).value;
            case Trader::ForwardInsider:
                return forward_insider_terminal_wealth(p, draw).value;
            case Trader::SkorokhodUnbiased:
                return skorokhod_unbiased_sample(p, draw).value;
        }
        throw Error(ErrorCode::UnknownTrader, "trader", "unknown trader");
    };

    return run_blocks(begin, end, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        MomentAccumulator acc;
        for (std::uint64_t i = lo; i < hi; ++i) acc.add(sample(i));
        return acc;
    });
}

MCEstimate estimate_mean(Trader trader, const MarketParams& p, std::uint64_t n,
                         std::uint64_t seed, unsigned chunks,
                         std::optional<Allocation> allocation) {
    if (n < 2) {
        throw Error(ErrorCode::BadSampleCount, "n", "an estimate needs at least 2 samples");
    }
    if (chunks < 1) {
        throw Error(ErrorCode::InvalidSpec, "chunks", "chunks must be >= 1");
    }
    const MomentAccumulator acc = accumulate_range(trader, p, allocation, seed, 0, n, chunks);
    return make_estimate(acc, seed, trader == Trader::SkorokhodUnbiased);
}

EulerEstimate estimate_forward_euler(const MarketParams& p, std::uint64_t n_steps,
                                     std::uint64_t n, std::uint64_t seed, unsigned chunks) {
    if (n < 2) {
        throw Error(ErrorCode::BadSampleCount, "n", "an estimate needs at least 2 samples");
    }
    if (n_steps < 1) {
        throw Error(ErrorCode::InvalidSpec, "n_steps", "n_steps must be >= 1");
    }
    if (chunks < 1) {
        throw Error(ErrorCode::InvalidSpec, "chunks", "chunks must be >= 1");
    }
    const RngStream stream(seed);
    const MomentAccumulator acc =
        run_blocks(0, n, chunks, [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<double> increments(n_steps);
            MomentAccumulator block;
            for (std::uint64_t i = lo; i < hi; ++i) {
                fill_brownian_increments(stream, i, p.horizon, increments);
                const EulerSample s = forward_euler_terminal(p, increments);
                block.add(s.sample.value);
                if (s.clamped) ++block.events;
            }
            return block;
        });
    return {make_estimate(acc, seed, false), n_steps, acc.events};
}

double z_score(const MCEstimate& est, double reference) {
    if (est.std_error == 0.0) {
        if (est.mean == reference) return 0.0;
        throw Error(ErrorCode::DegenerateEstimate, "std_error",
                    "zero standard error with a mean different from the reference");
    }
    return (est.mean - reference) / est.std_error;
}

}  // namespace insider
