#include <apfree/cache.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace apfree {

namespace {

using Json = nlohmann::ordered_json;

auto witness_json(const IntSet & set) -> Json
{
    Json out = Json::array();
    for (auto x : set)
        out.push_back(x);
    return out;
}

auto witness_from(const Json & j) -> IntSet
{
    auto raw = j.get<std::vector<Int>>();
    return IntSet::from_sorted(std::move(raw));
}

template <typename Entry, typename Map, typename Key>
auto put_into(Map & map, const Key & key, const Entry & entry) -> bool
{
    auto it = map.find(key);
    if (it != map.end() && it->second.certified && ! entry.certified)
        return false;
    map.insert_or_assign(key, entry);
    return true;
}

} // namespace

auto format_record(const SolverEntry & e) -> std::string
{
    Json j;
    j["kind"] = "rk";
    j["k"] = e.k;
    j["n"] = e.n;
    j["value"] = e.value;
    j["certified"] = e.certified;
    j["witness"] = witness_json(e.witness);
    return j.dump();
}

auto format_record(const FskEntry & e) -> std::string
{
    Json j;
    j["kind"] = "fsk";
    j["k"] = e.k;
    j["s"] = e.s;
    j["n"] = e.n;
    j["window"] = e.window;
    j["value"] = e.value;
    j["certified"] = e.certified;
    j["witness"] = witness_json(e.witness);
    return j.dump();
}

auto Cache::rk(int k, Int n) const -> std::optional<SolverEntry>
{
    auto it = rk_.find({k, n});
    if (it == rk_.end())
        return std::nullopt;
    return it->second;
}

auto Cache::fsk(int k, int s, Int n, Int window) const -> std::optional<FskEntry>
{
    auto it = fsk_.find({k, s, n, window});
    if (it == fsk_.end())
        return std::nullopt;
    return it->second;
}

auto Cache::put(const SolverEntry & e) -> bool
{
    return put_into(rk_, std::pair{e.k, e.n}, e);
}

auto Cache::put(const FskEntry & e) -> bool
{
    return put_into(fsk_, std::tuple{e.k, e.s, e.n, e.window}, e);
}

auto Cache::rk_entries() const -> std::vector<SolverEntry>
{
    std::vector<SolverEntry> out;
    for (const auto & [key, e] : rk_)
        out.push_back(e);
    return out;
}

auto Cache::fsk_entries() const -> std::vector<FskEntry>
{
    std::vector<FskEntry> out;
    for (const auto & [key, e] : fsk_)
        out.push_back(e);
    return out;
}

void Cache::load(std::istream & in)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            auto j = Json::parse(line);
            auto kind = j.at("kind").get<std::string>();
            if (kind == "rk") {
                SolverEntry e;
                e.k = j.at("k").get<int>();
                e.n = j.at("n").get<Int>();
                e.value = j.at("value").get<Int>();
                e.certified = j.at("certified").get<bool>();
                e.witness = witness_from(j.at("witness"));
                put(e);
            }
            else if (kind == "fsk") {
                FskEntry e;
                e.k = j.at("k").get<int>();
                e.s = j.at("s").get<int>();
                e.n = j.at("n").get<Int>();
                e.window = j.at("window").get<Int>();
                e.value = j.at("value").get<Count>();
                e.certified = j.at("certified").get<bool>();
                e.witness = witness_from(j.at("witness"));
                put(e);
            }
            else
                throw std::runtime_error("unknown record kind '" + kind + "'");
        }
        catch (const std::exception & ex) {
            throw std::runtime_error("cache line " + std::to_string(line_no) + ": " + ex.what());
        }
    }
}

void Cache::load_file(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (! in)
        return;
    load(in);
}

void Cache::save(std::ostream & out) const
{
    for (const auto & [key, e] : rk_)
        out << format_record(e) << '\n';
    for (const auto & [key, e] : fsk_)
        out << format_record(e) << '\n';
}

void Cache::save_file(const std::filesystem::path & path) const
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (! out)
            throw std::runtime_error("cannot write cache file " + tmp.string());
        save(out);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace apfree
