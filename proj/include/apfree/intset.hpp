#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apfree {

using Int = std::int64_t;
using Count = std::uint64_t;

/// Finite set of integers stored as a strictly increasing sequence.
class IntSet
{
  public:
    IntSet() = default;
    IntSet(std::initializer_list<Int> raw);

    /// Sorts and deduplicates an arbitrary sequence.
    static auto normalize(std::span<const Int> raw) -> IntSet;
    /// Wraps a sequence the caller guarantees is strictly increasing.
    static auto from_sorted(std::vector<Int> sorted) -> IntSet;
    /// {lo, lo+1, ..., hi}; empty when hi < lo.
    static auto interval(Int lo, Int hi) -> IntSet;

    auto size() const noexcept -> std::size_t { return elems_.size(); }
    auto empty() const noexcept -> bool { return elems_.empty(); }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    auto operator[](std::size_t i) const -> Int { return elems_[i]; }
    auto front() const -> Int { return elems_.front(); }
    auto back() const -> Int { return elems_.back(); }
    auto elements() const noexcept -> std::span<const Int> { return elems_; }
    auto to_vector() const -> const std::vector<Int> & { return elems_; }

    auto contains(Int x) const -> bool;
    auto is_subset_of(const IntSet & other) const -> bool;
    /// Index of x within the set, if present.
    auto index_of(Int x) const -> std::optional<std::size_t>;

    auto operator==(const IntSet &) const -> bool = default;
    auto operator<=>(const IntSet &) const = default;

  private:
    std::vector<Int> elems_;
};

/// Comma-separated rendering, e.g. "1,2,4".
auto to_string(const IntSet & set) -> std::string;

/// Canonically oriented progression start, start+diff, ..., start+(length-1)diff.
struct Progression
{
    Int start = 0;
    Int diff = 1;
    int length = 3;

    auto term(int i) const -> Int { return start + diff * i; }
    auto terms() const -> std::vector<Int>;
    auto operator==(const Progression &) const -> bool = default;
};

/// Number of non-trivial s-term progressions in A, each counted once with diff > 0.
/// Throws std::invalid_argument for s < 3.
auto count_s_aps(const IntSet & set, int s) -> Count;

/// First progression of the given length in A in (start, diff) order.
auto find_ap(const IntSet & set, int length) -> std::optional<Progression>;

struct FreenessResult
{
    bool free = true;
    std::optional<Progression> witness;
    explicit operator bool() const noexcept { return free; }
};

auto is_k_ap_free(const IntSet & set, int k) -> FreenessResult;

/// Sequences a, a+D, ..., a+(s-1)D inside {1..N} over every integer D,
/// zero and negative included. Computed by direct summation over D.
auto window_ap_count_exact(Int window, int s) -> Count;

/// The closed form N + 2 * sum_{a=1}^{N-1} floor((N-a)/s) used as a lower
/// estimate for the window count.
auto window_ap_count_closed_form(Int window, int s) -> Count;

auto negate(const IntSet & set) -> IntSet;
auto sumset(const IntSet & lhs, const IntSet & rhs) -> IntSet;
auto difference_set(const IntSet & lhs, const IntSet & rhs) -> IntSet;
/// rX - r'X, i.e. X+...+X (r times) - X-...-X (r' times). Requires r + r' >= 1.
auto iterated_sumset(int r, int r_neg, const IntSet & set) -> IntSet;

} // namespace apfree
