#pragma once

#include <cstdint>

namespace apfree {

/// Counter-based generator: every stream is a pure function of (seed, stream id),
/// so draws do not depend on thread count or evaluation order.
class CounterRng
{
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept :
        state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL)))
    {
    }

    auto next() noexcept -> std::uint64_t
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform integer in [lo, hi], unbiased by rejection.
    auto uniform(std::int64_t lo, std::int64_t hi) noexcept -> std::int64_t
    {
        auto range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0)
            return static_cast<std::int64_t>(next());
        auto limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t x;
        do
            x = next();
        while (x >= limit);
        return lo + static_cast<std::int64_t>(x % range);
    }

  private:
    static auto mix(std::uint64_t z) noexcept -> std::uint64_t
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace apfree
