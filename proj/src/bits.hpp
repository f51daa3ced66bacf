#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace apfree::detail {

// Fixed-size bit set sized at runtime; positions index a bounded universe.
class Bits
{
  public:
    Bits() = default;
    explicit Bits(std::size_t size) : words_((size + 64) / 64, 0) {}

    auto test(std::size_t i) const -> bool { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    // Number of clear positions in [lo, hi].
    auto count_clear(std::size_t lo, std::size_t hi) const -> std::size_t
    {
        std::size_t set_bits = 0;
        for (auto i = lo; i <= hi;) {
            if ((i & 63) == 0 && i + 63 <= hi) {
                set_bits += static_cast<std::size_t>(std::popcount(words_[i >> 6]));
                i += 64;
            }
            else {
                set_bits += test(i);
                ++i;
            }
        }
        return hi - lo + 1 - set_bits;
    }

    auto words() const -> const std::vector<std::uint64_t> & { return words_; }
    auto operator==(const Bits &) const -> bool = default;

  private:
    std::vector<std::uint64_t> words_;
};

} // namespace apfree::detail
