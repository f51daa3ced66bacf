#pragma once

// Slow reference implementations used only by tests. None of these share code
// paths with the library: membership goes through std::set, subsets through
// bitmask enumeration.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Int = std::int64_t;

// s-APs counted from every (first, second) pair with a std::set lookup per term.
inline auto count_aps(const std::vector<Int> & elems, int s) -> std::uint64_t
{
    std::set<Int> members(elems.begin(), elems.end());
    std::vector<Int> sorted(members.begin(), members.end());
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            Int d = sorted[j] - sorted[i];
            bool all = true;
            for (int t = 2; t < s && all; ++t)
                all = members.count(sorted[i] + t * d) > 0;
            total += all;
        }
    return total;
}

inline auto is_free(const std::vector<Int> & elems, int k) -> bool
{
    return count_aps(elems, k) == 0;
}

// Every k-AP inside {1..n} as a bitmask over positions 0..n-1.
inline auto ap_masks(int n, int k) -> std::vector<std::uint32_t>
{
    std::vector<std::uint32_t> masks;
    for (int a = 1; a <= n; ++a)
        for (int d = 1; a + (k - 1) * d <= n; ++d) {
            std::uint32_t m = 0;
            for (int t = 0; t < k; ++t)
                m |= 1U << (a + t * d - 1);
            masks.push_back(m);
        }
    return masks;
}

// r_k(1..n_max) by enumerating every subset of {1..n_max}; index 0 is unused.
inline auto rk_table(int n_max, int k) -> std::vector<int>
{
    auto masks = ap_masks(n_max, k);
    std::vector<int> best(static_cast<std::size_t>(n_max + 1), 0);
    for (std::uint32_t sub = 1; sub < (1U << n_max); ++sub) {
        bool ok = std::none_of(masks.begin(), masks.end(), [&](std::uint32_t m) { return (sub & m) == m; });
        if (! ok)
            continue;
        int top = 32 - __builtin_clz(sub);
        int size = __builtin_popcount(sub);
        best[static_cast<std::size_t>(top)] = std::max(best[static_cast<std::size_t>(top)], size);
    }
    for (int n = 1; n <= n_max; ++n)
        best[static_cast<std::size_t>(n)] = std::max(best[static_cast<std::size_t>(n)], best[static_cast<std::size_t>(n - 1)]);
    return best;
}

// Sequences a, a+D, ..., a+(s-1)D inside {1..N} for every integer D.
inline auto window_count(Int N, int s) -> std::uint64_t
{
    std::uint64_t total = 0;
    for (Int a = 1; a <= N; ++a)
        for (Int d = -N; d <= N; ++d) {
            bool inside = true;
            for (int t = 0; t < s && inside; ++t)
                inside = a + t * d >= 1 && a + t * d <= N;
            total += inside;
        }
    return total;
}

// Max s-AP count over every k-AP-free n-subset of {1..window}; no normalization.
inline auto fsk_max(int n, int k, int s, int window) -> std::uint64_t
{
    std::uint64_t best = 0;
    std::vector<Int> pick;
    auto rec = [&](auto && self, Int next) -> void {
        if (static_cast<int>(pick.size()) == n) {
            if (is_free(pick, k))
                best = std::max(best, count_aps(pick, s));
            return;
        }
        for (Int x = next; x <= window; ++x) {
            pick.push_back(x);
            self(self, x + 1);
            pick.pop_back();
        }
    };
    rec(rec, 1);
    return best;
}

// All walks a - b - c - d - e along the symmetric edge list.
inline auto walks4(const std::vector<std::pair<Int, Int>> & edges, Int from, Int to) -> std::uint64_t
{
    std::set<std::pair<Int, Int>> adj(edges.begin(), edges.end());
    std::set<Int> vertices;
    for (auto [a, b] : edges)
        vertices.insert(a);
    std::uint64_t total = 0;
    for (auto b : vertices)
        for (auto c : vertices)
            for (auto d : vertices)
                total += adj.count({from, b}) && adj.count({b, c}) && adj.count({c, d}) && adj.count({d, to});
    return total;
}

// Exact mean of f_s over all (2N)^s offset vectors, as numerator / (2N)^s.
inline auto block_expectation_numerator(const std::vector<Int> & seed, Int N, int s) -> std::uint64_t
{
    std::uint64_t total = 0;
    std::vector<Int> offsets(static_cast<std::size_t>(s), 1);
    for (;;) {
        std::vector<Int> a;
        for (int i = 0; i < s; ++i)
            for (auto x : seed)
                a.push_back(x + 6 * i * N - 1 + offsets[static_cast<std::size_t>(i)]);
        total += count_aps(a, s);
        int pos = 0;
        while (pos < s && offsets[static_cast<std::size_t>(pos)] == 2 * N)
            offsets[static_cast<std::size_t>(pos++)] = 1;
        if (pos == s)
            break;
        ++offsets[static_cast<std::size_t>(pos)];
    }
    return total;
}

} // namespace oracle
