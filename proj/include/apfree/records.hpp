#pragma once

#include <apfree/cache.hpp>
#include <apfree/constructions.hpp>
#include <apfree/exact.hpp>
#include <apfree/intset.hpp>
#include <apfree/structure.hpp>

#include <json.hpp>

namespace apfree {

/// Every record is a flat-ish JSON object whose first field is "kind"; rk and fsk
/// records match the cache file line format exactly.
using Record = nlohmann::ordered_json;

auto to_record(const SolverEntry & entry) -> Record;
auto to_record(const FskEntry & entry) -> Record;
auto to_record(const StabilityRow & row, int k, int s) -> Record;
auto to_record(const MonteCarloStats & stats) -> Record;
auto to_record(const RichSubsetReport & report) -> Record;
auto to_record(const BsgReport & report) -> Record;
auto to_record(const FreimanResult & result, const FreimanMap & map) -> Record;
auto to_record(const PlunneckeReport & report) -> Record;

auto set_json(const IntSet & set) -> Record;
auto progression_json(const Progression & p) -> Record;
/// {"exact": "p/q", "approx": double}
auto rational_json(const Rational & q) -> Record;

} // namespace apfree
