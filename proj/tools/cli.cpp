#include "cli.hpp"

#include <apfree/cache.hpp>
#include <apfree/constructions.hpp>
#include <apfree/exact.hpp>
#include <apfree/intset.hpp>
#include <apfree/records.hpp>
#include <apfree/rng.hpp>
#include <apfree/structure.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace apfree::cli {

namespace {

class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Common
{
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t max_nodes = 0;
    std::int64_t time_limit_ms = 0;
    std::string cache_path;
    std::string output;
    std::string format = "lines";

    auto budget() const -> Budget { return Budget{max_nodes, std::chrono::milliseconds(time_limit_ms)}; }
};

auto parse_int(const std::string & token) -> Int
{
    Int value = 0;
    auto first = token.data();
    auto last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || token.empty())
        throw UsageError("not a decimal integer: '" + token + "'");
    return value;
}

auto parse_list(const std::string & text) -> std::vector<Int>
{
    std::vector<Int> out;
    if (text.empty())
        return out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ','))
        out.push_back(parse_int(token));
    return out;
}

auto parse_set(const std::string & text) -> IntSet
{
    return IntSet::normalize(parse_list(text));
}

auto read_set_file(const std::string & path) -> IntSet
{
    std::ifstream in(path);
    if (! in)
        throw UsageError("cannot read set file " + path);
    std::vector<Int> raw;
    std::string line;
    while (std::getline(in, line)) {
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos)
            continue;
        auto end = line.find_last_not_of(" \t\r");
        raw.push_back(parse_int(line.substr(begin, end - begin + 1)));
    }
    return IntSet::normalize(raw);
}

// Collects records and renders them as JSON lines or CSV.
class Emitter
{
  public:
    void add(Record r) { records_.push_back(std::move(r)); }

    void write(std::ostream & out, const std::string & format) const
    {
        if (format == "lines") {
            for (const auto & r : records_)
                out << r.dump() << '\n';
            return;
        }
        // CSV: a header row whenever the field list changes.
        std::vector<std::string> header;
        for (const auto & r : records_) {
            std::vector<std::string> keys;
            for (const auto & [key, value] : r.items())
                keys.push_back(key);
            if (keys != header) {
                header = keys;
                out << join(keys) << '\n';
            }
            std::vector<std::string> cells;
            for (const auto & [key, value] : r.items())
                cells.push_back(cell(value));
            out << join(cells) << '\n';
        }
    }

  private:
    static auto join(const std::vector<std::string> & parts) -> std::string
    {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i)
                out += ',';
            out += parts[i];
        }
        return out;
    }

    static auto quote(const std::string & s) -> std::string
    {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"')
                out += '"';
            out += c;
        }
        return out + "\"";
    }

    static auto cell(const Record & value) -> std::string
    {
        if (value.is_string())
            return quote(value.get<std::string>());
        if (value.is_array() && std::all_of(value.begin(), value.end(), [](const Record & v) { return v.is_number_integer(); })) {
            std::string out;
            for (const auto & v : value) {
                if (! out.empty())
                    out += ' ';
                out += v.dump();
            }
            return out;
        }
        if (value.is_object() && value.contains("exact") && value.size() == 2)
            return quote(value["exact"].get<std::string>());
        if (value.is_structured())
            return quote(value.dump());
        if (value.is_null())
            return "";
        return value.dump();
    }

    std::vector<Record> records_;
};

// Cache bound to a file for the duration of one command.
class CacheSession
{
  public:
    explicit CacheSession(std::string path) : path_(std::move(path))
    {
        if (! path_.empty())
            cache_.load_file(path_);
    }

    auto get() -> Cache * { return &cache_; }

    void save() const
    {
        if (! path_.empty())
            cache_.save_file(path_);
    }

  private:
    std::string path_;
    Cache cache_;
};

void require_k(int k)
{
    if (k < 3)
        throw UsageError("--k must be at least 3");
}

void require_s(int s)
{
    if (s < 3)
        throw UsageError("--s must be at least 3");
}

struct Inputs
{
    // rk, find-n, fsk, count, construct, montecarlo
    int k = 3;
    int s = 3;
    Int n = 0;
    Int target = 0;
    Int window = 0;
    Int stability = 0;
    std::string set_text;
    std::string set_file;
    Int within = 0;
    // construct
    std::string type;
    std::string u_text, v_text;
    Int m = 0;
    std::string variant = "corrected";
    Int block_n = 0;
    std::string offsets_text;
    Int augment_to = 0;
    // montecarlo
    std::uint64_t trials = 0;
    bool exhaustive = false;
    // bsg
    Int interval = 0;
    double constant = 2000.0;
    unsigned retries = 64;
    double gate = 30.0;
    // freiman / plunnecke
    std::string source_text, target_text, affine_text;
    int order = 2;
    std::string t_text;
    int r = 1, r_neg = 1;
};

auto load_set(const Inputs & in, CLI::App * sub, bool allow_interval = false) -> IntSet
{
    bool has_set = sub->count("--set") > 0;
    bool has_file = sub->count("--set-file") > 0;
    bool has_interval = allow_interval && sub->count("--interval") > 0;
    if (has_set + has_file + has_interval != 1)
        throw UsageError(std::string("exactly one of --set, --set-file") + (allow_interval ? ", --interval" : "") +
            " is required");
    if (has_set)
        return parse_set(in.set_text);
    if (has_file)
        return read_set_file(in.set_file);
    if (in.interval < 1)
        throw UsageError("--interval must be positive");
    return IntSet::interval(1, in.interval);
}

auto freeness_fields(Record & rec, const IntSet & set, int k)
{
    auto check = is_k_ap_free(set, k);
    rec["k"] = k;
    rec["k_ap_free"] = check.free;
    rec["witness_ap"] = check.witness ? progression_json(*check.witness) : Record(nullptr);
    return check.free;
}

auto cmd_rk(const Common & c, const Inputs & in, Emitter & emit) -> int
{
    require_k(in.k);
    if (in.n < 1)
        throw UsageError("--n must be positive");
    CacheSession cache(c.cache_path);
    auto entry = rk_exact(in.k, in.n, cache.get(), c.budget());
    cache.save();
    emit.add(to_record(entry));
    if (! entry.certified)
        return unresolved;
    return is_k_ap_free(entry.witness, in.k) ? ok : verification_failed;
}

auto cmd_find_n(const Common & c, const Inputs & in, CLI::App * sub, Emitter & emit) -> int
{
    require_k(in.k);
    Int target = in.target;
    if (sub->count("--target") == 0) {
        if (sub->count("--n") == 0 || sub->count("--s") == 0)
            throw UsageError("find-n needs --target or both --n and --s");
        require_s(in.s);
        target = in.n / in.s;
    }
    if (target < 1)
        throw UsageError("target must be positive");
    CacheSession cache(c.cache_path);
    auto result = find_N(in.k, target, cache.get(), c.budget());
    cache.save();
    Record rec;
    rec["kind"] = "find-n";
    rec["k"] = in.k;
    rec["target"] = target;
    rec["resolved"] = result.resolved;
    rec["N"] = result.N ? Record(*result.N) : Record(nullptr);
    emit.add(rec);
    return result.resolved ? ok : unresolved;
}

auto cmd_fsk(const Common & c, const Inputs & in, Emitter & emit) -> int
{
    require_s(in.s);
    if (in.k <= in.s)
        throw UsageError("--k must exceed --s");
    FskOptions options{c.budget(), c.threads};
    if (in.stability > 0) {
        bool certified = true;
        for (const auto & row : window_stability(in.k, in.s, in.stability, options)) {
            emit.add(to_record(row, in.k, in.s));
            certified = certified && row.certified;
        }
        return certified ? ok : unresolved;
    }
    if (in.n < in.s)
        throw UsageError("--n must be at least --s");
    Int window = in.window > 0 ? in.window : 4 * in.n;
    if (window < in.n)
        throw UsageError("--window must be at least --n");
    CacheSession cache(c.cache_path);
    if (auto hit = cache.get()->fsk(in.k, in.s, in.n, window); hit && hit->certified) {
        emit.add(to_record(*hit));
        return ok;
    }
    auto entry = fsk_windowed_max(in.n, in.k, in.s, window, options);
    cache.get()->put(entry);
    cache.save();
    emit.add(to_record(entry));
    if (! entry.certified)
        return unresolved;
    bool sound = entry.witness.size() == static_cast<std::size_t>(in.n) && is_k_ap_free(entry.witness, in.k) &&
        count_s_aps(entry.witness, in.s) == entry.value;
    return sound ? ok : verification_failed;
}

auto cmd_count(const Inputs & in, CLI::App * sub, Emitter & emit) -> int
{
    require_s(in.s);
    auto set = load_set(in, sub);
    Record rec;
    rec["kind"] = "count";
    rec["size"] = set.size();
    rec["s"] = in.s;
    rec["value"] = count_s_aps(set, in.s);
    bool good = true;
    if (sub->count("--k") > 0) {
        require_k(in.k);
        freeness_fields(rec, set, in.k);
    }
    if (sub->count("--within") > 0) {
        bool inside = set.empty() || (set.front() >= 1 && set.back() <= in.within);
        rec["within"] = in.within;
        rec["inside_window"] = inside;
        good = good && inside;
    }
    rec["set"] = set_json(set);
    emit.add(rec);
    return good ? ok : verification_failed;
}

auto cmd_construct(const Common & c, const Inputs & in, Emitter & emit) -> int
{
    Record rec;
    rec["kind"] = "construct";
    rec["type"] = in.type;
    int status = ok;
    if (in.type == "seed") {
        if (in.n < 1)
            throw UsageError("--n must be positive");
        auto set = threeapfree_seed(in.n);
        rec["n_bound"] = in.n;
        rec["size"] = set.size();
        if (! freeness_fields(rec, set, 3))
            status = verification_failed;
        rec["set"] = set_json(set);
    }
    else if (in.type == "product") {
        require_k(in.k);
        auto u = parse_set(in.u_text);
        auto v = parse_set(in.v_text);
        ProductVariant variant;
        if (in.variant == "literal")
            variant = ProductVariant::literal;
        else if (in.variant == "corrected")
            variant = ProductVariant::corrected;
        else
            throw UsageError("--variant must be literal or corrected");
        auto w = product_construct(u, in.m, v, in.n, variant);
        bool inputs_free = is_k_ap_free(u, in.k).free && is_k_ap_free(v, in.k).free;
        rec["variant"] = in.variant;
        rec["m"] = in.m;
        rec["n"] = in.n;
        rec["size"] = w.size();
        rec["inputs_k_ap_free"] = inputs_free;
        bool free = freeness_fields(rec, w, in.k);
        bool inside = ! w.empty() && w.front() >= 1 && w.back() <= 2 * in.m * in.n;
        rec["inside_2mn"] = inside;
        rec["counterexample"] = inputs_free && ! free;
        rec["set"] = set_json(w);
        // The literal variant is kept for reproduction; only the corrected one is held to the invariant.
        if (variant == ProductVariant::corrected && inputs_free && (! free || ! inside || w.size() != u.size() * v.size()))
            status = verification_failed;
    }
    else if (in.type == "block") {
        require_s(in.s);
        require_k(in.k);
        BlockParams params{in.block_n, in.s, in.k, parse_set(in.set_text), parse_list(in.offsets_text)};
        if (in.offsets_text.empty()) {
            CounterRng rng(c.seed, 0);
            params.offsets.assign(static_cast<std::size_t>(in.s), 0);
            for (auto & d : params.offsets)
                d = rng.uniform(1, 2 * std::max<Int>(1, in.block_n));
        }
        validate(params);
        auto set = block_random_construct(params);
        if (in.augment_to > 0)
            set = augment_to_size(set, in.k, in.s, in.block_n, static_cast<std::size_t>(in.augment_to));
        rec["N"] = in.block_n;
        rec["s"] = in.s;
        rec["offsets"] = params.offsets;
        rec["size"] = set.size();
        rec["s_aps"] = count_s_aps(set, in.s);
        if (! freeness_fields(rec, set, in.k))
            status = verification_failed;
        rec["set"] = set_json(set);
    }
    else
        throw UsageError("--type must be seed, product, or block");
    emit.add(rec);
    return status;
}

auto cmd_montecarlo(const Common & c, const Inputs & in, Emitter & emit) -> int
{
    require_s(in.s);
    if (in.k <= in.s)
        throw UsageError("--k must exceed --s");
    auto seed_set = parse_set(in.set_text);
    if (! in.exhaustive && in.trials == 0)
        throw UsageError("--trials must be positive");
    BlockParams probe{in.block_n, in.s, in.k, seed_set, std::vector<Int>(static_cast<std::size_t>(in.s), 1)};
    validate(probe);
    auto stats = in.exhaustive ? exhaustive_expected_saps(seed_set, in.block_n, in.s, in.k, c.threads)
                               : monte_carlo_expected_saps(seed_set, in.block_n, in.s, in.k, in.trials, c.seed, c.threads);
    auto bound = expected_sap_lower_bound(in.block_n, in.s, static_cast<Int>(seed_set.size()));
    auto rec = to_record(stats);
    rec["mode"] = in.exhaustive ? "exhaustive" : "sampled";
    rec["seed"] = c.seed;
    rec["N"] = in.block_n;
    rec["s"] = in.s;
    rec["k"] = in.k;
    rec["seed_size"] = seed_set.size();
    rec["lower_bound"] = rational_json(bound);
    rec["mean_meets_bound"] = stats.mean >= bound;
    emit.add(rec);
    // Only the exact mean is held to the bound; a sample mean may fall short.
    return in.exhaustive && stats.mean < bound ? verification_failed : ok;
}

auto cmd_bsg(const Common & c, const Inputs & in, CLI::App * sub, Emitter & emit) -> int
{
    auto set = load_set(in, sub, true);
    if (set.size() < 2)
        throw UsageError("bsg needs at least two elements");
    BsgOptions options;
    options.constant = in.constant;
    options.rich.seed = c.seed;
    options.rich.retries = in.retries;
    options.rich.hypothesis_constant = in.gate;
    options.threads = c.threads;
    auto report = verify_bsg(set, options);
    auto rec = to_record(report);
    rec["constant"] = in.constant;
    rec["gate"] = in.gate;
    rec["seed"] = c.seed;
    emit.add(rec);
    return report.passed() ? ok : verification_failed;
}

auto cmd_freiman(const Inputs & in, CLI::App * sub, Emitter & emit) -> int
{
    if (in.order < 2)
        throw UsageError("--r must be at least 2");
    auto source = parse_set(in.source_text);
    FreimanMap map;
    if (sub->count("--affine") > 0) {
        auto coeffs = parse_list(in.affine_text);
        if (coeffs.size() != 2 || coeffs[0] == 0)
            throw UsageError("--affine takes scale,shift with nonzero scale");
        map = affine_map(source, coeffs[0], coeffs[1], in.order);
    }
    else if (sub->count("--target") > 0) {
        auto target = parse_set(in.target_text);
        if (target.size() != source.size())
            throw UsageError("--source and --target must have the same size");
        map = order_preserving_map(source, target, in.order);
    }
    else
        throw UsageError("freiman needs --target or --affine");
    auto result = freiman_iso_check(map);
    emit.add(to_record(result, map));
    return result.isomorphic ? ok : verification_failed;
}

auto cmd_plunnecke(const Inputs & in, Emitter & emit) -> int
{
    auto s = parse_set(in.set_text);
    auto t = parse_set(in.t_text);
    if (s.empty() || t.empty())
        throw UsageError("--S and --T must be nonempty");
    if (in.r < 1 || in.r_neg < 1)
        throw UsageError("--r and --r2 must be positive");
    auto report = plunnecke_check(s, t, in.r, in.r_neg);
    emit.add(to_record(report));
    return report.passed ? ok : verification_failed;
}

auto cmd_verify_tables(const Common & c, const Inputs & in, Emitter & emit) -> int
{
    require_k(in.k);
    CacheSession cache(c.cache_path);
    int status = ok;
    if (in.n > 0) {
        auto top = rk_exact(in.k, in.n, cache.get(), c.budget());
        if (! top.certified)
            status = unresolved;
    }
    cache.save();
    auto report = verify_table_inequalities(*cache.get());
    for (const auto & [name, count] : report.checked) {
        Record rec;
        rec["kind"] = "table-check";
        rec["check"] = name;
        rec["pairs_checked"] = count;
        emit.add(rec);
    }
    for (const auto & v : report.violations) {
        Record rec;
        rec["kind"] = "table-violation";
        rec["check"] = v.check;
        rec["k"] = v.k;
        rec["detail"] = v.detail;
        emit.add(rec);
    }
    if (! report.passed())
        return verification_failed;
    return status;
}

} // namespace

auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{"Progression-free set toolkit: exact r_k(n), f_{s,k} search, constructions, and checks", "apfree"};
    app.fallthrough();
    app.require_subcommand(1, 1);

    Common common;
    if (const char * env = std::getenv(cache_env))
        common.cache_path = env;
    app.add_option("--seed", common.seed, "64-bit seed for every randomized step");
    app.add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1U, 1024U));
    app.add_option("--max-nodes", common.max_nodes, "Search node budget (0 = unlimited)");
    app.add_option("--time-limit-ms", common.time_limit_ms, "Search time budget in ms (0 = unlimited)");
    app.add_option("--cache", common.cache_path, std::string("Cache file (default: $") + cache_env + ")");
    app.add_option("--output", common.output, "Write records here instead of standard output");
    app.add_option("--format", common.format, "Record format")->check(CLI::IsMember({"lines", "csv"}));

    Inputs in;
    auto add_set = [&](CLI::App * sub) {
        sub->add_option("--set", in.set_text, "Comma-separated integers");
        sub->add_option("--set-file", in.set_file, "File with one integer per line");
    };

    auto rk = app.add_subcommand("rk", "Exact r_k(n)");
    rk->add_option("--k", in.k)->required();
    rk->add_option("--n", in.n)->required();

    auto find_n = app.add_subcommand("find-n", "Least N with r_k(N) = target (or floor(n/s))");
    find_n->add_option("--k", in.k)->required();
    find_n->add_option("--target", in.target);
    find_n->add_option("--n", in.n);
    find_n->add_option("--s", in.s);

    auto fsk = app.add_subcommand("fsk", "Windowed maximum of f_s over k-AP-free n-sets");
    fsk->add_option("--n", in.n);
    fsk->add_option("--k", in.k)->required();
    fsk->add_option("--s", in.s)->required();
    fsk->add_option("--window", in.window, "Universe bound (default 4n)");
    fsk->add_option("--stability", in.stability, "Compare windows 4n and 6n for n = s..this value");

    auto construct = app.add_subcommand("construct", "Seed, product, or block constructions");
    construct->add_option("--type", in.type)->required();
    construct->add_option("--n", in.n, "Universe bound (seed) or n (product)");
    construct->add_option("--U", in.u_text);
    construct->add_option("--m", in.m);
    construct->add_option("--V", in.v_text);
    construct->add_option("--variant", in.variant);
    construct->add_option("--S", in.set_text, "Seed set for the block construction");
    construct->add_option("--N", in.block_n);
    construct->add_option("--s", in.s);
    construct->add_option("--k", in.k);
    construct->add_option("--d", in.offsets_text, "Offsets d_1..d_s (default: drawn from --seed)");
    construct->add_option("--augment-to", in.augment_to);

    auto count = app.add_subcommand("count", "Count s-APs and optionally check k-AP-freeness");
    add_set(count);
    count->add_option("--s", in.s);
    count->add_option("--k", in.k);
    count->add_option("--within", in.within, "Also check the set lies in {1..n}");

    auto montecarlo = app.add_subcommand("montecarlo", "Expected s-AP count of the block construction");
    montecarlo->add_option("--S", in.set_text)->required();
    montecarlo->add_option("--N", in.block_n)->required();
    montecarlo->add_option("--s", in.s)->required();
    montecarlo->add_option("--k", in.k)->required();
    montecarlo->add_option("--trials", in.trials);
    montecarlo->add_flag("--exhaustive", in.exhaustive, "Enumerate all (2N)^s offset vectors");

    auto bsg = app.add_subcommand("bsg", "AP graph, rich subset, and difference-set checks");
    add_set(bsg);
    bsg->add_option("--interval", in.interval, "Use {1..n}");
    bsg->add_option("--constant", in.constant);
    bsg->add_option("--retries", in.retries);
    bsg->add_option("--gate", in.gate, "Density hypothesis constant c in p >= c/sqrt(n)");

    auto freiman = app.add_subcommand("freiman", "Freiman r-isomorphism check");
    freiman->add_option("--source", in.source_text)->required();
    freiman->add_option("--target", in.target_text, "Order-preserving pairing with this set");
    freiman->add_option("--affine", in.affine_text, "scale,shift");
    freiman->add_option("--r", in.order);

    auto plunnecke = app.add_subcommand("plunnecke", "Check |rT - r'T| <= alpha^(r+r') |S|");
    plunnecke->add_option("--S", in.set_text)->required();
    plunnecke->add_option("--T", in.t_text)->required();
    plunnecke->add_option("--r", in.r);
    plunnecke->add_option("--r2", in.r_neg);

    auto verify = app.add_subcommand("verify-tables", "Fill r_k up to --n and check table inequalities");
    verify->add_option("--k", in.k);
    verify->add_option("--n", in.n);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    }
    catch (const CLI::ParseError & e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return usage_error;
    }

    Emitter emit;
    int status = ok;
    try {
        if (rk->parsed())
            status = cmd_rk(common, in, emit);
        else if (find_n->parsed())
            status = cmd_find_n(common, in, find_n, emit);
        else if (fsk->parsed())
            status = cmd_fsk(common, in, emit);
        else if (construct->parsed())
            status = cmd_construct(common, in, emit);
        else if (count->parsed())
            status = cmd_count(in, count, emit);
        else if (montecarlo->parsed())
            status = cmd_montecarlo(common, in, emit);
        else if (bsg->parsed())
            status = cmd_bsg(common, in, bsg, emit);
        else if (freiman->parsed())
            status = cmd_freiman(in, freiman, emit);
        else if (plunnecke->parsed())
            status = cmd_plunnecke(in, emit);
        else if (verify->parsed())
            status = cmd_verify_tables(common, in, emit);
    }
    catch (const UsageError & e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    catch (const std::invalid_argument & e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    catch (const ConstructionSoundnessError & e) {
        err << "construction soundness error: " << e.what() << '\n';
        return verification_failed;
    }

    if (common.output.empty())
        emit.write(out, common.format);
    else {
        std::ofstream file(common.output);
        if (! file) {
            err << "error: cannot write " << common.output << '\n';
            return usage_error;
        }
        emit.write(file, common.format);
    }
    return status;
}

} // namespace apfree::cli
