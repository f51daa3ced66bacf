#include <apfree/constructions.hpp>
#include <apfree/exact.hpp>
#include <apfree/rng.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace apfree {

namespace {

// Node limit for the exact candidate inside threeapfree_seed. Counted in nodes
// rather than time so the seed stays deterministic.
constexpr std::uint64_t seed_exact_nodes = 200'000;

auto better(const IntSet & candidate, const IntSet & incumbent) -> bool
{
    if (candidate.size() != incumbent.size())
        return candidate.size() > incumbent.size();
    return candidate < incumbent;
}

// Does x, taken as the largest term, complete a k-AP with members of the set?
auto closes_ap(const std::vector<Int> & sorted, Int x, int k) -> bool
{
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        Int d = x - *it;
        if (d <= 0)
            continue;
        bool full = true;
        for (int j = 2; j <= k - 1 && full; ++j)
            full = std::binary_search(sorted.begin(), sorted.end(), x - j * d);
        if (full)
            return true;
    }
    return false;
}

auto greedy_from(Int start, Int n_bound) -> IntSet
{
    std::vector<Int> chosen;
    for (Int x = start; x <= n_bound; ++x)
        if (! closes_ap(chosen, x, 3))
            chosen.push_back(x);
    return IntSet::from_sorted(std::move(chosen));
}

struct AggregateCounts
{
    std::uint64_t trials = 0;
    BigInt sum = 0;
    BigInt sum_sq = 0;
    Count min = 0;
    Count max = 0;

    void add(Count c)
    {
        if (trials == 0 || c < min)
            min = c;
        if (trials == 0 || c > max)
            max = c;
        ++trials;
        sum += c;
        sum_sq += BigInt(c) * c;
    }

    void merge(const AggregateCounts & other)
    {
        if (other.trials == 0)
            return;
        if (trials == 0 || other.min < min)
            min = other.min;
        if (trials == 0 || other.max > max)
            max = other.max;
        trials += other.trials;
        sum += other.sum;
        sum_sq += other.sum_sq;
    }

    auto stats() const -> MonteCarloStats
    {
        MonteCarloStats out;
        out.trials = trials;
        out.min = min;
        out.max = max;
        Rational mean(sum, BigInt(trials));
        out.mean = mean;
        out.variance = Rational(sum_sq, BigInt(trials)) - mean * mean;
        return out;
    }
};

template <typename OffsetsFor>
auto aggregate(const BlockParams & base, std::uint64_t total, unsigned threads, OffsetsFor offsets_for)
    -> MonteCarloStats
{
    std::vector<AggregateCounts> partial(std::max(1U, threads));
    detail::parallel_slices(total, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned slot) {
        BlockParams params = base;
        for (auto t = begin; t < end; ++t) {
            offsets_for(t, params.offsets);
            auto set = block_random_construct(params);
            partial[slot].add(count_s_aps(set, params.s));
        }
    });
    AggregateCounts all;
    for (const auto & p : partial)
        all.merge(p);
    return all.stats();
}

} // namespace

auto behrend_best(Int n_bound) -> IntSet
{
    if (n_bound < 1)
        throw std::invalid_argument("behrend_best: n_bound must be positive");
    IntSet best{1};
    // Points x in [0, n_bound) whose base-(2d-1) digits are all below d, grouped by
    // the squared norm of the digit vector. Adding two such points never carries,
    // so x + z = 2y forces equal digit vectors on a sphere.
    // Digit bounds with base^2 > n_bound give at most two digits and tiny spheres.
    for (Int digit_bound = 2;; ++digit_bound) {
        Int base = 2 * digit_bound - 1;
        if (digit_bound > 2 && base * base > n_bound)
            break;
        std::map<Int, std::vector<Int>> spheres;
        for (Int x = 0; x < n_bound; ++x) {
            Int norm = 0;
            bool ok = true;
            for (Int rest = x; rest > 0 && ok; rest /= base) {
                Int digit = rest % base;
                ok = digit < digit_bound;
                norm += digit * digit;
            }
            if (ok)
                spheres[norm].push_back(x + 1);
        }
        for (auto & [norm, points] : spheres) {
            auto candidate = IntSet::from_sorted(points);
            if (better(candidate, best))
                best = std::move(candidate);
        }
    }
    return best;
}

auto greedy_best(Int n_bound) -> IntSet
{
    if (n_bound < 1)
        throw std::invalid_argument("greedy_best: n_bound must be positive");
    IntSet best;
    for (Int start = 1; start <= std::min<Int>(n_bound, 32); ++start) {
        auto candidate = greedy_from(start, n_bound);
        if (better(candidate, best))
            best = std::move(candidate);
    }
    return best;
}

auto threeapfree_seed(Int n_bound) -> IntSet
{
    if (n_bound < 1)
        throw std::invalid_argument("threeapfree_seed: n_bound must be positive");
    auto best = behrend_best(n_bound);
    if (auto greedy = greedy_best(n_bound); better(greedy, best))
        best = std::move(greedy);
    auto exact = rk_exact(3, n_bound, nullptr, Budget{seed_exact_nodes, {}});
    if (better(exact.witness, best))
        best = exact.witness;
    if (! is_k_ap_free(best, 3))
        throw ConstructionSoundnessError("threeapfree_seed produced a 3-AP");
    return best;
}

auto product_construct(const IntSet & u, Int m, const IntSet & v, Int n, ProductVariant variant) -> IntSet
{
    if (u.empty() || v.empty())
        throw std::invalid_argument("product_construct: U and V must be nonempty");
    if (u.front() < 1 || u.back() > m)
        throw std::invalid_argument("product_construct: U must lie in {1..m}");
    if (v.front() < 1 || v.back() > n)
        throw std::invalid_argument("product_construct: V must lie in {1..n}");
    std::vector<Int> out;
    out.reserve(u.size() * v.size());
    for (auto a : u)
        for (auto b : v)
            out.push_back(variant == ProductVariant::literal ? 2 * a * (n - 1) + b : 2 * n * (a - 1) + b);
    return IntSet::normalize(out);
}

void validate(const BlockParams & p)
{
    if (p.N < 1)
        throw std::invalid_argument("BlockParams: N must be positive");
    if (p.s < 3)
        throw std::invalid_argument("BlockParams: s must be at least 3");
    if (p.k <= p.s)
        throw std::invalid_argument("BlockParams: k must exceed s");
    if (! p.seed.empty() && (p.seed.front() < 1 || p.seed.back() > p.N))
        throw std::invalid_argument("BlockParams: seed must lie in {1..N}");
    if (! is_k_ap_free(p.seed, p.k))
        throw std::invalid_argument("BlockParams: seed is not k-AP-free");
    if (p.offsets.size() != static_cast<std::size_t>(p.s))
        throw std::invalid_argument("BlockParams: need exactly s offsets");
    for (auto d : p.offsets)
        if (d < 1 || d > 2 * p.N)
            throw std::invalid_argument("BlockParams: offsets must lie in {1..2N}");
}

auto block_random_construct(const BlockParams & p) -> IntSet
{
    validate(p);
    std::vector<Int> out;
    out.reserve(p.seed.size() * static_cast<std::size_t>(p.s));
    for (int i = 0; i < p.s; ++i) {
        Int shift = 6 * i * p.N - 1 + p.offsets[static_cast<std::size_t>(i)];
        for (auto x : p.seed)
            out.push_back(x + shift);
    }
    // Blocks occupy disjoint increasing ranges, so the concatenation is sorted.
    auto set = IntSet::from_sorted(std::move(out));
    if (auto check = is_k_ap_free(set, p.k); ! check)
        throw ConstructionSoundnessError("block construction produced a " + std::to_string(p.k) +
            "-AP starting at " + std::to_string(check.witness->start) + " with difference " +
            std::to_string(check.witness->diff));
    return set;
}

auto augment_to_size(const IntSet & set, int k, int s, Int N, std::size_t target_size) -> IntSet
{
    if (k < 3)
        throw std::invalid_argument("augment_to_size: k must be at least 3");
    std::vector<Int> out(set.begin(), set.end());
    Int floor = (out.empty() ? 0 : out.back()) + static_cast<Int>(k) * 6 * s * N;
    for (Int x = floor + 1; out.size() < target_size; ++x)
        if (! closes_ap(out, x, k))
            out.push_back(x);
    return IntSet::from_sorted(std::move(out));
}

auto expected_sap_lower_bound(Int N, int s, Int seed_size) -> Rational
{
    if (N < 1 || s < 3 || seed_size < 0 || seed_size > N)
        throw std::invalid_argument("expected_sap_lower_bound: need N >= 1, s >= 3, 0 <= |S| <= N");
    Rational density(BigInt(seed_size), BigInt(2 * N));
    Rational power = 1;
    for (int i = 0; i < s; ++i)
        power *= density;
    return Rational(BigInt(1), BigInt(s)) * Rational(BigInt(N) * (N - 1), BigInt(2)) * power;
}

auto final_lower_bound(Int n, int s, Int N) -> Rational
{
    if (n < 1 || s < 1 || N < 1)
        throw std::invalid_argument("final_lower_bound: arguments must be positive");
    Rational base(BigInt(n), BigInt(300) * s * N);
    Rational out = Rational(BigInt(n) * n);
    for (int i = 0; i < s - 2; ++i)
        out *= base;
    for (int i = 0; i > s - 2; --i)
        out /= base;
    return out;
}

auto monte_carlo_expected_saps(const IntSet & seed_set, Int N, int s, int k, std::uint64_t trials,
    std::uint64_t seed, unsigned threads) -> MonteCarloStats
{
    if (trials == 0)
        throw std::invalid_argument("monte_carlo_expected_saps: need at least one trial");
    BlockParams base{N, s, k, seed_set, std::vector<Int>(static_cast<std::size_t>(s), 1)};
    validate(base);
    return aggregate(base, trials, threads, [&](std::uint64_t trial, std::vector<Int> & offsets) {
        CounterRng rng(seed, trial);
        for (auto & d : offsets)
            d = rng.uniform(1, 2 * N);
    });
}

auto exhaustive_expected_saps(const IntSet & seed_set, Int N, int s, int k, unsigned threads) -> MonteCarloStats
{
    BlockParams base{N, s, k, seed_set, std::vector<Int>(static_cast<std::size_t>(s), 1)};
    validate(base);
    std::uint64_t total = 1;
    for (int i = 0; i < s; ++i)
        total *= static_cast<std::uint64_t>(2 * N);
    return aggregate(base, total, threads, [&](std::uint64_t index, std::vector<Int> & offsets) {
        for (auto & d : offsets) {
            d = 1 + static_cast<Int>(index % static_cast<std::uint64_t>(2 * N));
            index /= static_cast<std::uint64_t>(2 * N);
        }
    });
}

} // namespace apfree
