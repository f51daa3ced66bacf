#include <apfree/records.hpp>

namespace apfree {

auto set_json(const IntSet & set) -> Record
{
    Record out = Record::array();
    for (auto x : set)
        out.push_back(x);
    return out;
}

auto progression_json(const Progression & p) -> Record
{
    Record out;
    out["start"] = p.start;
    out["diff"] = p.diff;
    out["length"] = p.length;
    return out;
}

auto rational_json(const Rational & q) -> Record
{
    Record out;
    out["exact"] = to_string(q);
    out["approx"] = to_double(q);
    return out;
}

auto to_record(const SolverEntry & e) -> Record
{
    return Record::parse(format_record(e));
}

auto to_record(const FskEntry & e) -> Record
{
    return Record::parse(format_record(e));
}

auto to_record(const StabilityRow & row, int k, int s) -> Record
{
    Record out;
    out["kind"] = "fsk-stability";
    out["k"] = k;
    out["s"] = s;
    out["n"] = row.n;
    out["small_window"] = row.small_window;
    out["small_value"] = row.small_value;
    out["large_window"] = row.large_window;
    out["large_value"] = row.large_value;
    out["stable"] = row.stable();
    out["certified"] = row.certified;
    return out;
}

auto to_record(const MonteCarloStats & stats) -> Record
{
    Record out;
    out["kind"] = "montecarlo";
    out["trials"] = stats.trials;
    out["mean"] = rational_json(stats.mean);
    out["variance"] = rational_json(stats.variance);
    out["min"] = stats.min;
    out["max"] = stats.max;
    return out;
}

auto to_record(const RichSubsetReport & r) -> Record
{
    Record out;
    out["kind"] = "rich-subset";
    out["trivial"] = r.trivial;
    out["succeeded"] = r.succeeded;
    out["attempts"] = r.attempts;
    out["threshold"] = rational_json(r.threshold);
    out["U"] = set_json(r.U);
    out["Aprime"] = set_json(r.Aprime);
    if (r.min_pair_paths)
        out["min_pair_paths"] = *r.min_pair_paths;
    else
        out["min_pair_paths"] = nullptr;
    out["guaranteed_paths"] = rational_json(r.guaranteed_paths);
    out["best_u_size"] = r.best_u_size;
    out["best_good_fraction"] = rational_json(r.best_good_fraction);
    return out;
}

auto to_record(const BsgReport & r) -> Record
{
    Record out;
    out["kind"] = "bsg";
    out["passed"] = r.passed();
    out["edges"] = r.edges;
    out["density"] = rational_json(r.density);
    out["partial_sumset_size"] = r.partial_sums.size();
    out["rich"] = to_record(r.rich);
    out["size_clause"] = r.size_clause;
    out["size_bound"] = rational_json(r.size_bound);
    out["aprime_size"] = r.rich.Aprime.size();
    out["difference_clause"] = r.difference_clause;
    out["difference_size"] = r.difference_size;
    out["difference_bound"] = r.difference_bound ? rational_json(*r.difference_bound) : Record(nullptr);
    out["measured_constant"] = r.measured_constant ? Record(*r.measured_constant) : Record(nullptr);
    out["representation_applicable"] = r.representation_applicable;
    out["representation_clause"] = r.representation_clause;
    out["representations_checked"] = r.representations.size();
    if (! r.representations.empty()) {
        auto least = r.representations.front().valid;
        for (const auto & c : r.representations)
            least = std::min(least, c.valid);
        out["min_representations"] = least;
    }
    else
        out["min_representations"] = nullptr;
    return out;
}

auto to_record(const FreimanResult & result, const FreimanMap & map) -> Record
{
    Record out;
    out["kind"] = "freiman";
    out["order"] = map.order;
    out["size"] = map.pairs.size();
    out["isomorphic"] = result.isomorphic;
    if (result.violation) {
        Record v;
        v["lhs"] = result.violation->lhs;
        v["rhs"] = result.violation->rhs;
        v["equal_side"] = result.violation->source_equal ? "source" : "target";
        out["violation"] = v;
    }
    else
        out["violation"] = nullptr;
    return out;
}

auto to_record(const PlunneckeReport & r) -> Record
{
    Record out;
    out["kind"] = "plunnecke";
    out["r"] = r.r;
    out["r_neg"] = r.r_neg;
    out["s_size"] = r.s_size;
    out["sum_size"] = r.sum_size;
    out["alpha"] = rational_json(r.alpha);
    out["bound"] = rational_json(r.bound);
    out["actual"] = r.actual;
    out["passed"] = r.passed;
    return out;
}

} // namespace apfree
