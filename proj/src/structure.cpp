#include <apfree/rng.hpp>
#include <apfree/structure.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace apfree {

auto APGraph::build(const IntSet & ground) -> APGraph
{
    APGraph g;
    g.ground_ = ground;
    auto n = ground.size();
    g.words_ = (n + 63) / 64;
    g.rows_.assign(n * g.words_, 0);
    g.neighbors_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int sum = ground[i] + ground[j];
            if (sum % 2 != 0 || ! ground.contains(sum / 2))
                continue;
            g.rows_[i * g.words_ + j / 64] |= std::uint64_t{1} << (j % 64);
            g.rows_[j * g.words_ + i / 64] |= std::uint64_t{1} << (i % 64);
            g.edges_ += 2;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.adjacent(i, j))
                g.neighbors_[i].push_back(j);
    return g;
}

auto APGraph::density() const -> Rational
{
    if (order() == 0)
        return 0;
    return Rational(BigInt(edges_), BigInt(order()) * order());
}

auto APGraph::adjacent(std::size_t i, std::size_t j) const -> bool
{
    return (rows_[i * words_ + j / 64] >> (j % 64)) & 1U;
}

auto APGraph::common_neighbors(std::size_t i, std::size_t j) const -> Count
{
    Count total = 0;
    for (std::size_t w = 0; w < words_; ++w)
        total += static_cast<Count>(std::popcount(rows_[i * words_ + w] & rows_[j * words_ + w]));
    return total;
}

auto APGraph::index_of(Int x) const -> std::size_t
{
    auto idx = ground_.index_of(x);
    if (! idx)
        throw std::invalid_argument("APGraph: " + std::to_string(x) + " is not a vertex");
    return *idx;
}

auto APGraph::edges() const -> std::vector<std::pair<Int, Int>>
{
    std::vector<std::pair<Int, Int>> out;
    for (std::size_t i = 0; i < order(); ++i)
        for (auto j : neighbors_[i])
            out.emplace_back(ground_[i], ground_[j]);
    return out;
}

auto partial_sumset(const APGraph & graph) -> IntSet
{
    std::vector<Int> sums;
    for (auto [a, b] : graph.edges())
        sums.push_back(a + b);
    return IntSet::normalize(sums);
}

auto count_paths4(const APGraph & graph, Int from, Int to) -> Count
{
    auto i = graph.index_of(from);
    auto j = graph.index_of(to);
    // (adjacency^4)[i][j] = sum over middles m of codeg(i,m) * codeg(m,j).
    Count total = 0;
    for (std::size_t m = 0; m < graph.order(); ++m)
        total += graph.common_neighbors(i, m) * graph.common_neighbors(m, j);
    return total;
}

auto rich_subset(const APGraph & graph, const RichSubsetOptions & options) -> RichSubsetReport
{
    RichSubsetReport report;
    auto n = graph.order();
    BigInt edges(graph.edge_count());
    BigInt n_big(n);
    // threshold = p^2 n / 20 = E^2 / (20 n^3)
    if (n > 0)
        report.threshold = Rational(edges * edges, 20 * n_big * n_big * n_big);

    // p >= c / sqrt(n)  <=>  p^2 n >= c^2  <=>  E^2 >= c^2 n^3
    Rational c(options.hypothesis_constant);
    bool hypothesis = n > 0 && Rational(edges * edges) >= c * c * Rational(n_big * n_big * n_big);
    if (! hypothesis) {
        report.trivial = true;
        report.succeeded = true;
        report.U = graph.ground();
        report.Aprime = graph.ground();
        return report;
    }

    Rational best_fraction = -1;
    std::vector<std::size_t> accepted;
    for (unsigned attempt = 0; attempt < options.retries; ++attempt) {
        ++report.attempts;
        CounterRng rng(options.seed, attempt);
        auto pivot = static_cast<std::size_t>(rng.uniform(0, static_cast<Int>(n) - 1));
        const auto & u = graph.neighbors(pivot);

        std::uint64_t pairs = 0, good = 0;
        for (std::size_t x = 0; x < u.size(); ++x)
            for (std::size_t y = x + 1; y < u.size(); ++y) {
                ++pairs;
                if (Rational(graph.common_neighbors(u[x], u[y])) >= report.threshold)
                    ++good;
            }
        Rational fraction = pairs == 0 ? Rational(1) : Rational(BigInt(good), BigInt(pairs));
        bool large = 2 * n_big * u.size() >= edges;
        if (large && fraction > best_fraction) {
            best_fraction = fraction;
            report.best_u_size = u.size();
        }
        else if (best_fraction < 0 && u.size() > report.best_u_size)
            report.best_u_size = u.size();
        if (large && 10 * good >= 9 * pairs) {
            accepted = u;
            report.succeeded = true;
            break;
        }
    }
    report.best_good_fraction = best_fraction < 0 ? Rational(0) : best_fraction;
    if (! report.succeeded)
        return report;

    // Degrees in the auxiliary graph of deficient pairs.
    std::vector<std::pair<std::size_t, std::size_t>> by_degree;
    for (auto x : accepted) {
        std::size_t deficient = 0;
        for (auto y : accepted)
            if (x != y && Rational(graph.common_neighbors(x, y)) < report.threshold)
                ++deficient;
        by_degree.emplace_back(deficient, x);
    }
    std::sort(by_degree.begin(), by_degree.end());
    std::vector<Int> kept;
    for (std::size_t i = 0; i < (accepted.size() + 1) / 2; ++i)
        kept.push_back(graph.ground()[by_degree[i].second]);

    std::vector<Int> u_elems;
    for (auto x : accepted)
        u_elems.push_back(graph.ground()[x]);
    report.U = IntSet::normalize(u_elems);
    report.Aprime = IntSet::normalize(kept);

    for (std::size_t i = 0; i < report.Aprime.size(); ++i)
        for (std::size_t j = i + 1; j < report.Aprime.size(); ++j) {
            auto paths = count_paths4(graph, report.Aprime[i], report.Aprime[j]);
            if (! report.min_pair_paths || paths < *report.min_pair_paths)
                report.min_pair_paths = paths;
        }
    Rational per_middle = report.threshold * (report.threshold - 1);
    if (per_middle < 0)
        per_middle = 0;
    report.guaranteed_paths = per_middle * Rational(BigInt(report.U.size()), BigInt(2));
    return report;
}

namespace {

// Enumerates walks a - b - a'' - b' - a' directly and checks each against the
// alternating-sum identity over the partial sumset.
auto check_representation(const APGraph & graph, const IntSet & sums, Int from, Int to) -> RepresentationCheck
{
    RepresentationCheck check{from - to, from, to, 0, 0, count_paths4(graph, from, to)};
    auto i = graph.index_of(from);
    auto j = graph.index_of(to);
    const auto & ground = graph.ground();
    for (auto b : graph.neighbors(i))
        for (auto mid : graph.neighbors(b))
            for (auto b2 : graph.neighbors(mid)) {
                if (! graph.adjacent(b2, j))
                    continue;
                ++check.walks;
                Int x1 = ground[i] + ground[b];
                Int x2 = ground[mid] + ground[b];
                Int x3 = ground[mid] + ground[b2];
                Int x4 = ground[j] + ground[b2];
                if (sums.contains(x1) && sums.contains(x2) && sums.contains(x3) && sums.contains(x4) &&
                    x1 - x2 + x3 - x4 == check.y)
                    ++check.valid;
            }
    return check;
}

} // namespace

auto verify_bsg(const IntSet & set, const BsgOptions & options) -> BsgReport
{
    if (set.size() < 2)
        throw std::invalid_argument("verify_bsg: need at least two elements");
    auto graph = APGraph::build(set);
    BsgReport report;
    report.edges = graph.edge_count();
    report.density = graph.density();
    report.partial_sums = partial_sumset(graph);
    report.rich = rich_subset(graph, options.rich);
    if (! report.rich.succeeded)
        return report;

    const auto & aprime = report.rich.Aprime;
    Rational n(BigInt(set.size()));
    report.size_bound = report.density * n / 4;
    report.size_clause = Rational(BigInt(aprime.size())) >= report.size_bound;

    auto differences = difference_set(aprime, aprime);
    report.difference_size = differences.size();
    if (report.density == 0)
        report.difference_clause = true;
    else {
        Rational p5 = report.density * report.density * report.density * report.density * report.density;
        report.difference_bound = Rational(options.constant) * n / p5;
        report.difference_clause = Rational(BigInt(differences.size())) <= *report.difference_bound;
        report.measured_constant = to_double(Rational(BigInt(differences.size())) * p5 / n);
    }

    report.representation_applicable = ! report.rich.trivial;
    if (! report.representation_applicable) {
        report.representation_clause = true;
        return report;
    }

    // Generating pair for y: the first (a, a') in A' x A' with a - a' = y.
    std::map<Int, std::pair<Int, Int>> generators;
    for (auto a : aprime)
        for (auto b : aprime)
            generators.try_emplace(a - b, a, b);
    std::vector<std::pair<Int, Int>> jobs;
    for (const auto & [y, pair] : generators)
        jobs.push_back(pair);

    report.representations.resize(jobs.size());
    detail::parallel_slices(jobs.size(), options.threads, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        for (auto t = begin; t < end; ++t)
            report.representations[t] = check_representation(graph, report.partial_sums, jobs[t].first, jobs[t].second);
    });
    report.representation_clause = std::all_of(report.representations.begin(), report.representations.end(),
        [](const RepresentationCheck & c) { return c.ok(); });
    return report;
}

auto FreimanMap::source() const -> IntSet
{
    std::vector<Int> xs;
    for (auto [x, y] : pairs)
        xs.push_back(x);
    return IntSet::normalize(xs);
}

auto FreimanMap::target() const -> IntSet
{
    std::vector<Int> ys;
    for (auto [x, y] : pairs)
        ys.push_back(y);
    return IntSet::normalize(ys);
}

auto FreimanMap::apply(Int x) const -> Int
{
    for (auto [from, to] : pairs)
        if (from == x)
            return to;
    throw std::invalid_argument("FreimanMap: " + std::to_string(x) + " is not in the source");
}

auto order_preserving_map(const IntSet & source, const IntSet & target, int order) -> FreimanMap
{
    if (source.size() != target.size())
        throw std::invalid_argument("order_preserving_map: |S| must equal |T|");
    FreimanMap map;
    map.order = order;
    for (std::size_t i = 0; i < source.size(); ++i)
        map.pairs.emplace_back(source[i], target[i]);
    return map;
}

auto affine_map(const IntSet & source, Int scale, Int shift, int order) -> FreimanMap
{
    if (scale == 0)
        throw std::invalid_argument("affine_map: scale must be nonzero");
    FreimanMap map;
    map.order = order;
    for (auto x : source)
        map.pairs.emplace_back(x, scale * x + shift);
    return map;
}

auto compose(const FreimanMap & first, const FreimanMap & second) -> FreimanMap
{
    FreimanMap out;
    out.order = std::min(first.order, second.order);
    for (auto [x, y] : first.pairs)
        out.pairs.emplace_back(x, second.apply(y));
    return out;
}

auto freiman_iso_check(const FreimanMap & map) -> FreimanResult
{
    if (map.order < 2)
        throw std::invalid_argument("freiman_iso_check: order must be at least 2");
    auto source = map.source();
    auto target = map.target();
    if (source.size() != map.pairs.size() || target.size() != map.pairs.size())
        throw std::invalid_argument("freiman_iso_check: pairs are not a bijection");

    auto pairs = map.pairs;
    std::sort(pairs.begin(), pairs.end());
    auto n = pairs.size();
    auto r = static_cast<std::size_t>(map.order);
    if (n == 0)
        return {};

    // Equal sums within a side must coincide with equal sums on the other side,
    // so it suffices to check that source sum -> target sum is a well-defined
    // injection on r-element multisets.
    using Tuple = std::vector<std::size_t>;
    std::map<Int, std::pair<Int, Tuple>> by_source;
    std::map<Int, std::pair<Int, Tuple>> by_target;
    auto values = [&](const Tuple & t, bool src) {
        std::vector<Int> out;
        for (auto i : t)
            out.push_back(src ? pairs[i].first : pairs[i].second);
        return out;
    };

    Tuple idx(r, 0);
    for (;;) {
        Int src = 0, tgt = 0;
        for (auto i : idx) {
            src += pairs[i].first;
            tgt += pairs[i].second;
        }
        auto [s_it, s_new] = by_source.try_emplace(src, tgt, idx);
        if (! s_new && s_it->second.first != tgt)
            return FreimanResult{false, FreimanViolation{values(s_it->second.second, true), values(idx, true), true}};
        auto [t_it, t_new] = by_target.try_emplace(tgt, src, idx);
        if (! t_new && t_it->second.first != src)
            return FreimanResult{false, FreimanViolation{values(t_it->second.second, true), values(idx, true), false}};

        // Next non-decreasing index tuple.
        std::size_t pos = r;
        while (pos > 0 && idx[pos - 1] == n - 1)
            --pos;
        if (pos == 0)
            break;
        auto v = idx[pos - 1] + 1;
        for (auto q = pos - 1; q < r; ++q)
            idx[q] = v;
    }
    return {};
}

auto plunnecke_check(const IntSet & s, const IntSet & t, int r, int r_neg) -> PlunneckeReport
{
    if (s.empty() || t.empty())
        throw std::invalid_argument("plunnecke_check: S and T must be nonempty");
    if (r < 1 || r_neg < 1)
        throw std::invalid_argument("plunnecke_check: r and r' must be positive");
    PlunneckeReport report;
    report.r = r;
    report.r_neg = r_neg;
    report.s_size = s.size();
    report.sum_size = sumset(s, t).size();
    report.alpha = Rational(BigInt(report.sum_size), BigInt(report.s_size));
    Rational bound(BigInt(report.s_size));
    for (int i = 0; i < r + r_neg; ++i)
        bound *= report.alpha;
    report.bound = bound;
    report.actual = iterated_sumset(r, r_neg, t).size();
    report.passed = Rational(BigInt(report.actual)) <= report.bound;
    return report;
}

} // namespace apfree
