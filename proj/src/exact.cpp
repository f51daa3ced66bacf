#include <apfree/exact.hpp>

#include "bits.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace apfree {

namespace {

using detail::Bits;
using Clock = std::chrono::steady_clock;

class BudgetTracker
{
  public:
    explicit BudgetTracker(Budget budget) : budget_(budget), start_(Clock::now()) {}

    // Returns false once the budget is spent.
    auto tick() -> bool
    {
        auto n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (exhausted_.load(std::memory_order_relaxed))
            return false;
        if (budget_.max_nodes != 0 && n > budget_.max_nodes) {
            exhausted_ = true;
            return false;
        }
        if (budget_.time_limit.count() != 0 && (n & 4095) == 0 && Clock::now() - start_ > budget_.time_limit) {
            exhausted_ = true;
            return false;
        }
        return true;
    }

    auto exhausted() const -> bool { return exhausted_.load(); }

  private:
    Budget budget_;
    Clock::time_point start_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> exhausted_{false};
};

// Marks every x+d (x the newest, largest element) that would complete a k-AP
// whose other k-1 terms are already chosen.
void forbid_completions(const std::vector<Int> & chosen, const Bits & chosen_bits, int k, Int limit, Bits & forbid)
{
    Int x = chosen.back();
    for (std::size_t i = 0; i + 1 < chosen.size(); ++i) {
        Int d = x - chosen[i];
        Int next = x + d;
        if (next > limit)
            continue;
        bool full = true;
        for (int j = 2; j <= k - 2 && full; ++j) {
            Int t = x - j * d;
            full = t >= 1 && chosen_bits.test(static_cast<std::size_t>(t));
        }
        if (full)
            forbid.set(static_cast<std::size_t>(next));
    }
}

// Looks for the lexicographically first k-AP-free subset of {1..m} of size target.
class RkSearch
{
  public:
    RkSearch(int k, Int m, Int target, const std::vector<Int> & table, BudgetTracker & budget, bool force_first) :
        k_(k), m_(m), target_(target), table_(table), budget_(budget), force_first_(force_first),
        chosen_bits_(static_cast<std::size_t>(m + 1)),
        forbid_(static_cast<std::size_t>(target + 1), Bits(static_cast<std::size_t>(m + 1)))
    {
    }

    auto run() -> bool { return dfs(1); }
    auto aborted() const -> bool { return aborted_; }
    auto witness() const -> IntSet { return IntSet::from_sorted(chosen_); }

  private:
    auto dfs(Int x) -> bool
    {
        if (! budget_.tick()) {
            aborted_ = true;
            return false;
        }
        auto c = static_cast<Int>(chosen_.size());
        if (c == target_)
            return true;
        if (x > m_)
            return false;
        Int len = m_ - x + 1;
        Int suffix_bound = len < m_ ? table_[static_cast<std::size_t>(len)] : len;
        Int open = static_cast<Int>(forbid_[c].count_clear(static_cast<std::size_t>(x), static_cast<std::size_t>(m_)));
        if (c + std::min(suffix_bound, open) < target_)
            return false;

        if (! forbid_[c].test(static_cast<std::size_t>(x))) {
            chosen_.push_back(x);
            chosen_bits_.set(static_cast<std::size_t>(x));
            forbid_[c + 1] = forbid_[c];
            forbid_completions(chosen_, chosen_bits_, k_, m_, forbid_[c + 1]);
            if (dfs(x + 1))
                return true;
            chosen_bits_.reset(static_cast<std::size_t>(x));
            chosen_.pop_back();
            if (aborted_)
                return false;
        }
        if (x == 1 && force_first_)
            return false;
        return dfs(x + 1);
    }

    int k_;
    Int m_;
    Int target_;
    const std::vector<Int> & table_;
    BudgetTracker & budget_;
    bool force_first_;
    std::vector<Int> chosen_;
    Bits chosen_bits_;
    std::vector<Bits> forbid_;
    bool aborted_ = false;
};

// r_k(0..m) built incrementally, consulting and feeding the cache.
class RkTable
{
  public:
    RkTable(int k, Cache * cache, BudgetTracker & budget) : k_(k), cache_(cache), budget_(budget)
    {
        values_.push_back(0);
        witnesses_.emplace_back();
    }

    auto resolved() const -> Int { return static_cast<Int>(values_.size()) - 1; }
    auto value(Int m) const -> Int { return values_[static_cast<std::size_t>(m)]; }
    auto witness(Int m) const -> const IntSet & { return witnesses_[static_cast<std::size_t>(m)]; }

    // Extends the table through m; false when the budget ran out first.
    auto extend_to(Int m) -> bool
    {
        while (resolved() < m) {
            Int next = resolved() + 1;
            if (cache_) {
                if (auto hit = cache_->rk(k_, next); hit && hit->certified) {
                    values_.push_back(hit->value);
                    witnesses_.push_back(hit->witness);
                    continue;
                }
            }
            Int prev = values_.back();
            RkSearch grow(k_, next, prev + 1, values_, budget_, true);
            if (grow.run()) {
                record(next, prev + 1, grow.witness());
                continue;
            }
            if (grow.aborted())
                return false;
            // The maximum did not grow; recover the lexicographically smallest witness.
            RkSearch same(k_, next, prev, values_, budget_, false);
            if (! same.run())
                return false;
            record(next, prev, same.witness());
        }
        return true;
    }

  private:
    void record(Int m, Int value, IntSet witness)
    {
        values_.push_back(value);
        witnesses_.push_back(witness);
        if (cache_)
            cache_->put(SolverEntry{k_, m, value, std::move(witness), true});
    }

    int k_;
    Cache * cache_;
    BudgetTracker & budget_;
    std::vector<Int> values_;
    std::vector<IntSet> witnesses_;
};

void require_k(int k, const char * what)
{
    if (k < 3)
        throw std::invalid_argument(std::string(what) + ": k must be at least 3");
}

// Shared state for the windowed f_s search.
struct FskShared
{
    std::atomic<Count> best{0};
    BudgetTracker & budget;
};

class FskSearch
{
  public:
    FskSearch(Int n, int k, int s, Int window, FskShared & shared) :
        n_(n), k_(k), s_(s), window_(window), shared_(shared),
        chosen_bits_(static_cast<std::size_t>(window + 1)),
        forbid_(static_cast<std::size_t>(n + 1), Bits(static_cast<std::size_t>(window + 1))),
        future_(static_cast<std::size_t>(n + 1), 0)
    {
        // future_[c]: most s-APs the remaining n-c elements can still close. An
        // element with j predecessors ends at most j-(s-2) progressions, since the
        // one with the largest difference has s-2 terms below every other
        // second-to-last term.
        for (Int c = n - 1; c >= 0; --c)
            future_[static_cast<std::size_t>(c)] =
                future_[static_cast<std::size_t>(c + 1)] + static_cast<Count>(std::max<Int>(0, c - (s - 2)));
    }

    // Explores sets starting with the given prefix (which must be k-AP-free).
    void run(const std::vector<Int> & prefix)
    {
        Count count = 0;
        for (auto x : prefix)
            count += push(x);
        dfs(prefix.back() + 1, count);
    }

    auto found() const -> bool { return found_; }
    auto best() const -> Count { return best_; }
    auto witness() const -> const IntSet & { return witness_; }
    auto aborted() const -> bool { return aborted_; }

  private:
    // Adds x and returns the number of s-APs it closes.
    auto push(Int x) -> Count
    {
        auto c = chosen_.size();
        Count closed = 0;
        for (auto y : chosen_) {
            Int d = x - y;
            bool full = true;
            for (int j = 2; j <= s_ - 1 && full; ++j) {
                Int t = x - j * d;
                full = t >= 1 && chosen_bits_.test(static_cast<std::size_t>(t));
            }
            closed += full;
        }
        chosen_.push_back(x);
        chosen_bits_.set(static_cast<std::size_t>(x));
        forbid_[c + 1] = forbid_[c];
        forbid_completions(chosen_, chosen_bits_, k_, window_, forbid_[c + 1]);
        return closed;
    }

    void pop()
    {
        chosen_bits_.reset(static_cast<std::size_t>(chosen_.back()));
        chosen_.pop_back();
    }

    void dfs(Int next_min, Count count)
    {
        if (! shared_.budget.tick()) {
            aborted_ = true;
            return;
        }
        auto c = static_cast<Int>(chosen_.size());
        if (c == n_) {
            Int g = 0;
            for (auto x : chosen_)
                g = std::gcd(g, x - 1);
            if (g != 1)
                return;
            if (! found_ || count > best_) {
                found_ = true;
                best_ = count;
                witness_ = IntSet::from_sorted(chosen_);
                auto cur = shared_.best.load();
                while (cur < count && ! shared_.best.compare_exchange_weak(cur, count)) {
                }
            }
            return;
        }
        Count bound = count + future_[static_cast<std::size_t>(c)];
        if (found_ && bound <= best_)
            return;
        if (bound < shared_.best.load(std::memory_order_relaxed))
            return;
        Int last = window_ - (n_ - c - 1);
        for (Int x = next_min; x <= last; ++x) {
            if (forbid_[static_cast<std::size_t>(c)].test(static_cast<std::size_t>(x)))
                continue;
            Count closed = push(x);
            dfs(x + 1, count + closed);
            pop();
            if (aborted_)
                return;
        }
    }

    Int n_;
    int k_;
    int s_;
    Int window_;
    FskShared & shared_;
    std::vector<Int> chosen_;
    Bits chosen_bits_;
    std::vector<Bits> forbid_;
    std::vector<Count> future_;
    bool found_ = false;
    Count best_ = 0;
    IntSet witness_;
    bool aborted_ = false;
};

} // namespace

auto rk_exact(int k, Int n, Cache * cache, Budget budget) -> SolverEntry
{
    require_k(k, "rk_exact");
    if (n < 1)
        throw std::invalid_argument("rk_exact: n must be positive");
    if (cache)
        if (auto hit = cache->rk(k, n); hit && hit->certified)
            return *hit;

    BudgetTracker tracker(budget);
    RkTable table(k, cache, tracker);
    if (table.extend_to(n))
        return SolverEntry{k, n, table.value(n), table.witness(n), true};
    Int reached = table.resolved();
    return SolverEntry{k, n, table.value(reached), table.witness(reached), false};
}

auto find_N(int k, Int target, Cache * cache, Budget budget) -> FindNResult
{
    require_k(k, "find_N");
    if (target < 1)
        throw std::invalid_argument("find_N: target must be positive");
    BudgetTracker tracker(budget);
    RkTable table(k, cache, tracker);
    // r_k grows by at most one per step, so N is reached no later than at the
    // first m with r_k(m) = target.
    for (Int m = 1;; ++m) {
        if (! table.extend_to(m))
            return FindNResult{std::nullopt, false};
        if (table.value(m) == target)
            return FindNResult{m, true};
    }
}

auto fsk_windowed_max(Int n, int k, int s, Int window, FskOptions options) -> FskEntry
{
    if (s < 3 || k <= s)
        throw std::invalid_argument("fsk_windowed_max: need k > s >= 3");
    if (n < s)
        throw std::invalid_argument("fsk_windowed_max: need n >= s");
    if (window < n)
        throw std::invalid_argument("fsk_windowed_max: window must hold n elements");

    BudgetTracker tracker(options.budget);
    FskShared shared{0, tracker};

    // One task per choice of the second element; tasks are combined in order so
    // the reported witness does not depend on scheduling.
    Int first_task = 2;
    Int last_task = window - n + 2;
    auto task_count = static_cast<std::size_t>(last_task - first_task + 1);
    struct TaskResult
    {
        bool found = false;
        Count value = 0;
        IntSet witness;
        bool aborted = false;
    };
    std::vector<TaskResult> results(task_count);
    std::atomic<std::size_t> next_task{0};

    auto worker = [&] {
        for (;;) {
            auto t = next_task.fetch_add(1);
            if (t >= task_count)
                return;
            FskSearch search(n, k, s, window, shared);
            search.run({1, first_task + static_cast<Int>(t)});
            results[t] = TaskResult{search.found(), search.best(), search.witness(), search.aborted()};
        }
    };

    unsigned threads = std::max(1U, options.threads);
    if (threads == 1)
        worker();
    else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }

    FskEntry entry{k, s, n, window, 0, {}, true};
    bool any = false;
    for (const auto & r : results) {
        if (r.aborted)
            entry.certified = false;
        if (r.found && (! any || r.value > entry.value)) {
            any = true;
            entry.value = r.value;
            entry.witness = r.witness;
        }
    }
    if (tracker.exhausted())
        entry.certified = false;
    return entry;
}

auto window_stability(int k, int s, Int n_max, FskOptions options) -> std::vector<StabilityRow>
{
    std::vector<StabilityRow> rows;
    for (Int n = s; n <= n_max; ++n) {
        auto small = fsk_windowed_max(n, k, s, 4 * n, options);
        auto large = fsk_windowed_max(n, k, s, 6 * n, options);
        rows.push_back(StabilityRow{n, 4 * n, 6 * n, small.value, large.value, small.certified && large.certified});
    }
    return rows;
}

auto verify_table_inequalities(const Cache & cache) -> TableReport
{
    std::map<int, std::map<Int, Int>> tables;
    for (const auto & e : cache.rk_entries())
        if (e.certified)
            tables[e.k][e.n] = e.value;

    std::map<std::string, std::uint64_t> checked;
    for (auto name : {"monotonicity", "step", "subadditivity", "almost-decreasing", "supermultiplicativity",
             "squared-density"})
        checked[name] = 0;

    TableReport report;
    auto fail = [&](const char * check, int k, std::string detail) {
        report.violations.push_back(Violation{check, k, std::move(detail)});
    };
    auto r_of = [](const std::map<Int, Int> & t, Int n) -> std::optional<Int> {
        auto it = t.find(n);
        if (it == t.end())
            return std::nullopt;
        return it->second;
    };
    auto pair_str = [](Int a, Int ra, Int b, Int rb) {
        return "r(" + std::to_string(a) + ")=" + std::to_string(ra) + ", r(" + std::to_string(b) +
            ")=" + std::to_string(rb);
    };

    for (const auto & [k, t] : tables) {
        for (auto [m, rm] : t)
            for (auto [n, rn] : t) {
                if (m < n) {
                    ++checked["monotonicity"];
                    if (rm > rn)
                        fail("monotonicity", k, pair_str(m, rm, n, rn));
                    if (n == m + 1) {
                        ++checked["step"];
                        if (rn - rm != 0 && rn - rm != 1)
                            fail("step", k, pair_str(m, rm, n, rn));
                    }
                }
                if (m <= n) {
                    if (auto sum = r_of(t, m + n)) {
                        ++checked["subadditivity"];
                        if (*sum > rm + rn)
                            fail("subadditivity", k,
                                pair_str(m, rm, n, rn) + ", r(" + std::to_string(m + n) + ")=" + std::to_string(*sum));
                    }
                    if (auto prod = r_of(t, 2 * m * n)) {
                        ++checked["supermultiplicativity"];
                        if (*prod < rm * rn)
                            fail("supermultiplicativity", k,
                                pair_str(m, rm, n, rn) + ", r(" + std::to_string(2 * m * n) +
                                    ")=" + std::to_string(*prod));
                    }
                }
                if (n >= m) {
                    // r(n)/(2n) <= r(m)/m
                    ++checked["almost-decreasing"];
                    if (static_cast<__int128>(rn) * m > static_cast<__int128>(2) * n * rm)
                        fail("almost-decreasing", k, pair_str(m, rm, n, rn));
                }
                // m plays N, n plays the smaller modulus: r(N)/N >= (r(n)/n)^2 / 8 when n^2 >= N.
                if (static_cast<__int128>(n) * n >= m) {
                    ++checked["squared-density"];
                    if (static_cast<__int128>(8) * rm * n * n < static_cast<__int128>(m) * rn * rn)
                        fail("squared-density", k, pair_str(m, rm, n, rn));
                }
            }
    }
    for (const auto & [name, count] : checked)
        report.checked.emplace_back(name, count);
    return report;
}

} // namespace apfree
