#include <apfree/intset.hpp>

#include <algorithm>
#include <stdexcept>

namespace apfree {

namespace {

void require_length(int s, const char * what)
{
    if (s < 3)
        throw std::invalid_argument(std::string(what) + ": progression length must be at least 3");
}

// Membership oracle over a sorted set: a dense bitmap when the span is small
// relative to the set, binary search otherwise.
class Membership
{
  public:
    explicit Membership(const IntSet & set) : set_(set)
    {
        if (set.empty())
            return;
        auto span = static_cast<std::uint64_t>(set.back() - set.front());
        if (span < (std::uint64_t{1} << 26) && span <= 64 * set.size() + 4096) {
            lo_ = set.front();
            dense_.assign(span + 1, false);
            for (auto x : set)
                dense_[static_cast<std::size_t>(x - lo_)] = true;
        }
    }

    auto operator()(Int x) const -> bool
    {
        if (! dense_.empty()) {
            if (x < lo_ || x - lo_ >= static_cast<Int>(dense_.size()))
                return false;
            return dense_[static_cast<std::size_t>(x - lo_)];
        }
        return set_.contains(x);
    }

  private:
    const IntSet & set_;
    Int lo_ = 0;
    std::vector<bool> dense_;
};

} // namespace

IntSet::IntSet(std::initializer_list<Int> raw)
{
    *this = normalize(std::span<const Int>(raw.begin(), raw.size()));
}

auto IntSet::normalize(std::span<const Int> raw) -> IntSet
{
    IntSet out;
    out.elems_.assign(raw.begin(), raw.end());
    std::sort(out.elems_.begin(), out.elems_.end());
    out.elems_.erase(std::unique(out.elems_.begin(), out.elems_.end()), out.elems_.end());
    return out;
}

auto IntSet::from_sorted(std::vector<Int> sorted) -> IntSet
{
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i - 1] >= sorted[i])
            throw std::invalid_argument("IntSet::from_sorted: sequence is not strictly increasing");
    IntSet out;
    out.elems_ = std::move(sorted);
    return out;
}

auto IntSet::interval(Int lo, Int hi) -> IntSet
{
    IntSet out;
    for (Int x = lo; x <= hi; ++x)
        out.elems_.push_back(x);
    return out;
}

auto IntSet::contains(Int x) const -> bool
{
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

auto IntSet::index_of(Int x) const -> std::optional<std::size_t>
{
    auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
    if (it == elems_.end() || *it != x)
        return std::nullopt;
    return static_cast<std::size_t>(it - elems_.begin());
}

auto IntSet::is_subset_of(const IntSet & other) const -> bool
{
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

auto to_string(const IntSet & set) -> std::string
{
    std::string out;
    for (auto x : set) {
        if (! out.empty())
            out += ',';
        out += std::to_string(x);
    }
    return out;
}

auto Progression::terms() const -> std::vector<Int>
{
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i)
        out.push_back(term(i));
    return out;
}

auto count_s_aps(const IntSet & set, int s) -> Count
{
    require_length(s, "count_s_aps");
    Membership member(set);
    Count total = 0;
    auto n = set.size();
    // Walk each maximal chain x, x+d, x+2d, ... once, from its first two terms.
    // A chain of L terms holds L-s+1 progressions of length s.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int d = set[j] - set[i];
            if (member(set[i] - d))
                continue;
            Int len = 2;
            for (Int x = set[j] + d; member(x); x += d)
                ++len;
            if (len >= s)
                total += static_cast<Count>(len - s + 1);
        }
    return total;
}

auto find_ap(const IntSet & set, int length) -> std::optional<Progression>
{
    require_length(length, "find_ap");
    Membership member(set);
    auto n = set.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int d = set[j] - set[i];
            int have = 2;
            while (have < length && member(set[i] + d * have))
                ++have;
            if (have == length)
                return Progression{set[i], d, length};
        }
    return std::nullopt;
}

auto is_k_ap_free(const IntSet & set, int k) -> FreenessResult
{
    auto witness = find_ap(set, k);
    return FreenessResult{! witness.has_value(), witness};
}

auto window_ap_count_exact(Int window, int s) -> Count
{
    require_length(s, "window_ap_count_exact");
    if (window < 1)
        throw std::invalid_argument("window_ap_count_exact: window must be positive");
    Count total = 0;
    Int span = s - 1;
    Int max_diff = (window - 1) / span;
    for (Int diff = -max_diff; diff <= max_diff; ++diff) {
        Int abs_diff = diff < 0 ? -diff : diff;
        total += static_cast<Count>(window - abs_diff * span);
    }
    return total;
}

auto window_ap_count_closed_form(Int window, int s) -> Count
{
    require_length(s, "window_ap_count_closed_form");
    if (window < 1)
        throw std::invalid_argument("window_ap_count_closed_form: window must be positive");
    Count total = static_cast<Count>(window);
    for (Int a = 1; a <= window - 1; ++a)
        total += 2 * static_cast<Count>((window - a) / s);
    return total;
}

auto negate(const IntSet & set) -> IntSet
{
    std::vector<Int> out(set.begin(), set.end());
    for (auto & x : out)
        x = -x;
    std::reverse(out.begin(), out.end());
    return IntSet::from_sorted(std::move(out));
}

auto sumset(const IntSet & lhs, const IntSet & rhs) -> IntSet
{
    std::vector<Int> sums;
    sums.reserve(lhs.size() * rhs.size());
    for (auto x : lhs)
        for (auto y : rhs)
            sums.push_back(x + y);
    return IntSet::normalize(sums);
}

auto difference_set(const IntSet & lhs, const IntSet & rhs) -> IntSet
{
    return sumset(lhs, negate(rhs));
}

auto iterated_sumset(int r, int r_neg, const IntSet & set) -> IntSet
{
    if (r < 0 || r_neg < 0 || r + r_neg < 1)
        throw std::invalid_argument("iterated_sumset: need r, r' >= 0 and r + r' >= 1");
    IntSet acc{0};
    for (int i = 0; i < r; ++i)
        acc = sumset(acc, set);
    auto neg = negate(set);
    for (int i = 0; i < r_neg; ++i)
        acc = sumset(acc, neg);
    return acc;
}

} // namespace apfree
