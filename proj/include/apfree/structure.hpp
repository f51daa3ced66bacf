#pragma once

#include <apfree/intset.hpp>
#include <apfree/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace apfree {

/// Bipartite graph between two copies of A with (a, b) joined when a != b and
/// (a+b)/2 lies in A. Vertices are addressed by their index in the ground set;
/// the relation is symmetric so one adjacency structure serves both sides.
class APGraph
{
  public:
    static auto build(const IntSet & ground) -> APGraph;

    auto ground() const -> const IntSet & { return ground_; }
    auto order() const -> std::size_t { return ground_.size(); }
    /// Ordered pairs, so twice the number of 3-APs.
    auto edge_count() const -> Count { return edges_; }
    /// edge_count / n^2.
    auto density() const -> Rational;

    auto adjacent(std::size_t i, std::size_t j) const -> bool;
    auto neighbors(std::size_t i) const -> const std::vector<std::size_t> & { return neighbors_[i]; }
    auto common_neighbors(std::size_t i, std::size_t j) const -> Count;
    auto index_of(Int x) const -> std::size_t;

    auto edges() const -> std::vector<std::pair<Int, Int>>;

  private:
    IntSet ground_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> rows_;
    std::vector<std::vector<std::size_t>> neighbors_;
    Count edges_ = 0;
};

inline auto build_ap_graph(const IntSet & ground) -> APGraph
{
    return APGraph::build(ground);
}

/// {a+b : (a,b) an edge}; for an AP graph this is {2c : c a realized midpoint}.
auto partial_sumset(const APGraph & graph) -> IntSet;

/// Walks a - b - a'' - b' - a' alternating between the two copies.
auto count_paths4(const APGraph & graph, Int from, Int to) -> Count;

struct RichSubsetOptions
{
    std::uint64_t seed = 0;
    unsigned retries = 64;
    /// Extraction runs only when p >= hypothesis_constant / sqrt(n).
    double hypothesis_constant = 30.0;
};

struct RichSubsetReport
{
    bool trivial = false;
    bool succeeded = false;
    IntSet U;
    IntSet Aprime;
    /// Common-neighbour cutoff p^2 n / 20.
    Rational threshold;
    /// Minimum path count over distinct pairs of A'; empty when |A'| < 2.
    std::optional<Count> min_pair_paths;
    /// (t)(t-1)|U|/2 with t the cutoff: the per-pair path count the argument guarantees.
    Rational guaranteed_paths;
    unsigned attempts = 0;
    /// Statistics of the best attempt, reported on failure as well.
    std::size_t best_u_size = 0;
    Rational best_good_fraction;
};

/// Dependent random choice: take the neighbourhood U of a random vertex, accept
/// it when |U| >= pn/2 and at least 90% of its pairs have p^2 n/20 common
/// neighbours, then keep the ceil(|U|/2) vertices of U with fewest deficient
/// partners (ties to the smaller element). Below the density hypothesis the
/// whole ground set is returned and flagged trivial.
auto rich_subset(const APGraph & graph, const RichSubsetOptions & options = {}) -> RichSubsetReport;

struct BsgOptions
{
    double constant = 2000.0;
    RichSubsetOptions rich;
    unsigned threads = 1;
};

struct RepresentationCheck
{
    Int y = 0;
    Int from = 0;
    Int to = 0;
    Count walks = 0;
    Count valid = 0;
    Count matrix_paths = 0;
    auto ok() const -> bool { return valid >= 1 && valid == walks && walks == matrix_paths; }
};

struct BsgReport
{
    Count edges = 0;
    Rational density;
    IntSet partial_sums;
    RichSubsetReport rich;

    bool size_clause = false;
    Rational size_bound;

    bool difference_clause = false;
    std::size_t difference_size = 0;
    /// constant * p^-5 * n; empty when p = 0.
    std::optional<Rational> difference_bound;
    /// |A'-A'| * p^5 / n.
    std::optional<double> measured_constant;

    bool representation_applicable = false;
    bool representation_clause = false;
    std::vector<RepresentationCheck> representations;

    auto passed() const -> bool { return rich.succeeded && size_clause && difference_clause && representation_clause; }
};

/// Runs the AP graph through the rich-subset extraction and checks |A'| >= pn/4,
/// |A'-A'| <= C p^-5 n, and that each y in A'-A' is x1-x2+x3-x4 over partial
/// sums for every walk between its generating pair.
auto verify_bsg(const IntSet & set, const BsgOptions & options = {}) -> BsgReport;

/// Bijection between S and T checked for preservation of r-fold sums.
struct FreimanMap
{
    std::vector<std::pair<Int, Int>> pairs;
    int order = 2;

    auto source() const -> IntSet;
    auto target() const -> IntSet;
    auto apply(Int x) const -> Int;
};

/// Pairs the i-th smallest of S with the i-th smallest of T.
auto order_preserving_map(const IntSet & source, const IntSet & target, int order) -> FreimanMap;
auto affine_map(const IntSet & source, Int scale, Int shift, int order) -> FreimanMap;
/// second after first; first's targets must be second's sources.
auto compose(const FreimanMap & first, const FreimanMap & second) -> FreimanMap;

struct FreimanViolation
{
    std::vector<Int> lhs;
    std::vector<Int> rhs;
    bool source_equal = false;
};

struct FreimanResult
{
    bool isomorphic = true;
    std::optional<FreimanViolation> violation;
    explicit operator bool() const { return isomorphic; }
};

/// Every pair of r-element multisets of S is compared: equal sums in S must map to
/// equal sums in T and conversely. Throws std::invalid_argument if the pairs are
/// not a bijection or order < 2.
auto freiman_iso_check(const FreimanMap & map) -> FreimanResult;

struct PlunneckeReport
{
    std::size_t s_size = 0;
    std::size_t sum_size = 0;
    Rational alpha;
    Rational bound;
    std::size_t actual = 0;
    int r = 1;
    int r_neg = 1;
    bool passed = false;
};

/// With alpha = |S+T|/|S|, compares |rT - r'T| against alpha^(r+r') |S|.
auto plunnecke_check(const IntSet & s, const IntSet & t, int r, int r_neg) -> PlunneckeReport;

} // namespace apfree
