#pragma once

#include <apfree/intset.hpp>
#include <apfree/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace apfree {

/// Raised when a construction emits a set that contains a forbidden progression.
/// Seeing one means the construction code is wrong.
class ConstructionSoundnessError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

/// Largest 3-AP-free subset of {1..n_bound} among a deterministic sweep of
/// candidates: Behrend sphere sets over all (digit bound, dimension, radius),
/// greedy sets from every starting point, and a node-limited exact search.
/// Ties go to the lexicographically smallest set.
auto threeapfree_seed(Int n_bound) -> IntSet;

/// Individual seed families, exposed for study.
auto behrend_best(Int n_bound) -> IntSet;
auto greedy_best(Int n_bound) -> IntSet;

enum class ProductVariant
{
    literal,   ///< {2u(n-1)+v}
    corrected, ///< {2n(u-1)+v}
};

/// Combines U in {1..m} and V in {1..n}. The corrected variant lies in {1..2mn},
/// has |U||V| elements, and is k-AP-free whenever U and V are.
auto product_construct(const IntSet & u, Int m, const IntSet & v, Int n, ProductVariant variant) -> IntSet;

/// Parameters of the block construction: s translated copies of a k-AP-free seed
/// S in {1..N}, copy i shifted by 6(i-1)N - 1 + d_i with d_i in {1..2N}.
struct BlockParams
{
    Int N = 1;
    int s = 3;
    int k = 4;
    IntSet seed;
    std::vector<Int> offsets;
};

/// Throws std::invalid_argument when any BlockParams invariant fails.
void validate(const BlockParams & params);

/// Union of the s translated copies. Throws ConstructionSoundnessError if the
/// result is not k-AP-free.
auto block_random_construct(const BlockParams & params) -> IntSet;

/// Greedily appends the smallest integers above max(A) + 6ksN that keep A
/// k-AP-free until A has target_size elements.
auto augment_to_size(const IntSet & set, int k, int s, Int N, std::size_t target_size) -> IntSet;

/// (1/s) * C(N,2) * (seed_size / 2N)^s.
auto expected_sap_lower_bound(Int N, int s, Int seed_size) -> Rational;

/// (n / (300 s N))^(s-2) * n^2.
auto final_lower_bound(Int n, int s, Int N) -> Rational;

struct MonteCarloStats
{
    std::uint64_t trials = 0;
    Rational mean;
    Rational variance; ///< population variance of the sampled counts
    Count min = 0;
    Count max = 0;
};

/// Samples offset vectors from a counter-based generator keyed by (seed, trial)
/// and reports statistics of count_s_aps over the resulting sets.
auto monte_carlo_expected_saps(const IntSet & seed_set, Int N, int s, int k, std::uint64_t trials,
    std::uint64_t seed, unsigned threads = 1) -> MonteCarloStats;

/// Same statistics over all (2N)^s offset vectors; the mean is the exact expectation.
auto exhaustive_expected_saps(const IntSet & seed_set, Int N, int s, int k, unsigned threads = 1) -> MonteCarloStats;

} // namespace apfree
