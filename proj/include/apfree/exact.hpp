#pragma once

#include <apfree/cache.hpp>
#include <apfree/intset.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace apfree {

/// Search limits. Zero means unlimited.
struct Budget
{
    std::uint64_t max_nodes = 0;
    std::chrono::milliseconds time_limit{0};
};

/// Computes r_k(n) by branch-and-bound over {1..n}, ascending, include-first.
///
/// Values are built up from r_k(1), r_k(2), ...: since r_k(m) - r_k(m-1) is 0 or 1,
/// each step only asks whether a set of size r_k(m-1)+1 exists in {1..m}. The
/// known smaller values bound what any suffix interval can still contribute.
/// The witness is the lexicographically smallest maximum set.
///
/// When the budget runs out the result is flagged uncertified; its value is then
/// a certified lower bound (r_k of the largest resolved prefix), never a guess.
/// Certified results are written back to the cache when one is supplied.
auto rk_exact(int k, Int n, Cache * cache = nullptr, Budget budget = {}) -> SolverEntry;

struct FindNResult
{
    std::optional<Int> N;
    bool resolved = false;
};

/// Least N with r_k(N) = target.
auto find_N(int k, Int target, Cache * cache = nullptr, Budget budget = {}) -> FindNResult;

struct FskOptions
{
    Budget budget;
    unsigned threads = 1;
};

/// Maximum number of s-APs over k-AP-free n-subsets of {1..window}.
///
/// Only sets with minimum 1 and gcd of differences 1 are visited; translation and
/// dilation preserve both the count and freeness. The witness is the
/// lexicographically smallest maximizer regardless of thread count.
auto fsk_windowed_max(Int n, int k, int s, Int window, FskOptions options = {}) -> FskEntry;

struct StabilityRow
{
    Int n = 0;
    Int small_window = 0;
    Int large_window = 0;
    Count small_value = 0;
    Count large_value = 0;
    bool certified = false;
    auto stable() const -> bool { return small_value == large_value; }
};

/// Compares windows 4n and 6n for n = s..n_max.
auto window_stability(int k, int s, Int n_max, FskOptions options = {}) -> std::vector<StabilityRow>;

struct Violation
{
    std::string check;
    int k = 0;
    std::string detail;
};

struct TableReport
{
    std::vector<std::pair<std::string, std::uint64_t>> checked;
    std::vector<Violation> violations;
    auto passed() const -> bool { return violations.empty(); }
};

/// Checks monotonicity, steps of 0 or 1, subadditivity, r(n)/(2n) <= r(m)/m for
/// n >= m, r(2mn) >= r(m)r(n), and r(N)/N >= (r(n)/n)^2/8 for n^2 >= N, over
/// every applicable pair of certified entries.
auto verify_table_inequalities(const Cache & cache) -> TableReport;

} // namespace apfree
