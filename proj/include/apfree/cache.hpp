#pragma once

#include <apfree/intset.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace apfree {

/// r_k(n) together with a witness subset of {1..n}.
struct SolverEntry
{
    int k = 3;
    Int n = 0;
    Int value = 0;
    IntSet witness;
    bool certified = false;
};

/// Windowed maximum of f_s over k-AP-free n-subsets of {1..window}.
struct FskEntry
{
    int k = 4;
    int s = 3;
    Int n = 0;
    Int window = 0;
    Count value = 0;
    IntSet witness;
    bool certified = false;
};

/// Persistent store of solver results. One JSON document per line; a certified
/// record is never replaced by an uncertified one, otherwise the latest wins.
class Cache
{
  public:
    auto rk(int k, Int n) const -> std::optional<SolverEntry>;
    auto fsk(int k, int s, Int n, Int window) const -> std::optional<FskEntry>;

    /// Returns true when the store changed.
    auto put(const SolverEntry & entry) -> bool;
    auto put(const FskEntry & entry) -> bool;

    /// All rk entries, ordered by (k, n).
    auto rk_entries() const -> std::vector<SolverEntry>;
    auto fsk_entries() const -> std::vector<FskEntry>;
    auto empty() const -> bool { return rk_.empty() && fsk_.empty(); }

    /// Merges records from a stream; malformed lines throw std::runtime_error.
    void load(std::istream & in);
    void load_file(const std::filesystem::path & path);
    void save(std::ostream & out) const;
    void save_file(const std::filesystem::path & path) const;

  private:
    std::map<std::pair<int, Int>, SolverEntry> rk_;
    std::map<std::tuple<int, int, Int, Int>, FskEntry> fsk_;
};

auto format_record(const SolverEntry & entry) -> std::string;
auto format_record(const FskEntry & entry) -> std::string;

} // namespace apfree
