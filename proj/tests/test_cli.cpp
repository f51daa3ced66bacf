#include "cli.hpp"

#include <apfree/cache.hpp>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

auto invoke(std::vector<std::string> args) -> Outcome
{
    std::ostringstream out, err;
    int code = apfree::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

auto first_record(const std::string & text) -> nlohmann::json
{
    return nlohmann::json::parse(text.substr(0, text.find('\n')));
}

auto temp_path(const std::string & name) -> std::filesystem::path
{
    auto dir = std::filesystem::temp_directory_path() / "apfree-cli-tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::filesystem::remove(path);
    return path;
}

} // namespace

TEST_CASE("rk and find-n records")
{
    auto rk = invoke({"rk", "--k", "3", "--n", "9"});
    CHECK(rk.code == 0);
    CHECK(rk.out == "{\"kind\":\"rk\",\"k\":3,\"n\":9,\"value\":5,\"certified\":true,\"witness\":[1,2,4,8,9]}\n");

    auto find = invoke({"find-n", "--k", "3", "--target", "5"});
    CHECK(find.code == 0);
    CHECK(first_record(find.out)["N"] == 9);
}

TEST_CASE("usage errors and unresolved searches")
{
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"rk", "--k", "2", "--n", "5"}).code == 2);
    CHECK(invoke({"rk", "--k", "3"}).code == 2);
    CHECK(invoke({"count", "--set", "1,x", "--s", "3"}).code == 2);
    CHECK(invoke({"construct", "--type", "block", "--S", "1", "--N", "1", "--s", "3", "--k", "3"}).code == 2);
    CHECK(invoke({"montecarlo", "--S", "1", "--N", "1", "--s", "3", "--k", "4", "--trials", "0"}).code == 2);

    auto starved = invoke({"--max-nodes", "100", "rk", "--k", "3", "--n", "200"});
    CHECK(starved.code == 3);
    CHECK(first_record(starved.out)["certified"] == false);
}

TEST_CASE("verification outcomes")
{
    auto freiman = invoke({"freiman", "--source", "0,1,2", "--target", "0,1,3", "--r", "2"});
    CHECK(freiman.code == 1);
    auto rec = first_record(freiman.out);
    CHECK(rec["isomorphic"] == false);

    auto literal = invoke({"construct", "--type", "product", "--U", "1,2", "--m", "2", "--V", "1,2", "--n", "2",
        "--variant", "literal", "--k", "4"});
    // Reproducing the literal variant's counterexample is not a failure; the record flags it.
    CHECK(literal.code == 0);
    CHECK(first_record(literal.out)["counterexample"] == true);

    auto affine = invoke({"freiman", "--source", "0,1,2", "--affine", "2,5", "--r", "2"});
    CHECK(affine.code == 0);
}

TEST_CASE("count and construct examples")
{
    auto count = invoke({"count", "--set", "1,2,3,4,5", "--s", "3"});
    CHECK(count.code == 0);
    CHECK(first_record(count.out)["value"] == 4);

    auto block = invoke({"construct", "--type", "block", "--S", "1", "--N", "1", "--s", "3", "--k", "4", "--d",
        "1,1,1"});
    CHECK(block.code == 0);
    CHECK(first_record(block.out)["set"] == nlohmann::json::array({1, 7, 13}));

    auto seed = invoke({"construct", "--type", "seed", "--n", "9"});
    CHECK(seed.code == 0);
    CHECK(first_record(seed.out)["set"].size() == 5);
}

TEST_CASE("set files")
{
    auto path = temp_path("set.txt");
    {
        std::ofstream file(path);
        file << "3\n1\n\n 2\n4\n5\n";
    }
    auto count = invoke({"count", "--set-file", path.string(), "--s", "3"});
    CHECK(count.code == 0);
    CHECK(first_record(count.out)["value"] == 4);
}

TEST_CASE("output is identical across thread counts")
{
    for (const auto & cmd : std::vector<std::vector<std::string>>{
             {"montecarlo", "--S", "1,2", "--N", "2", "--s", "3", "--k", "4", "--trials", "2000"},
             {"fsk", "--n", "6", "--k", "4", "--s", "3"},
             {"bsg", "--interval", "32", "--gate", "1"},
         }) {
        std::vector<std::string> one{"--seed", "9", "--threads", "1"};
        std::vector<std::string> four{"--seed", "9", "--threads", "4"};
        one.insert(one.end(), cmd.begin(), cmd.end());
        four.insert(four.end(), cmd.begin(), cmd.end());
        auto a = invoke(one);
        auto b = invoke(four);
        CAPTURE(cmd[0]);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("cache file round trip")
{
    auto path = temp_path("cache.jsonl");
    CHECK(invoke({"--cache", path.string(), "verify-tables", "--k", "3", "--n", "12"}).code == 0);
    apfree::Cache cache;
    cache.load_file(path);
    REQUIRE(cache.rk(3, 12));
    CHECK(cache.rk(3, 12)->value == 6);

    // With everything cached, a one-node budget still resolves.
    auto cached = invoke({"--cache", path.string(), "--max-nodes", "1", "rk", "--k", "3", "--n", "12"});
    CHECK(cached.code == 0);
    CHECK(first_record(cached.out)["value"] == 6);
}

TEST_CASE("csv output")
{
    auto csv = invoke({"--format", "csv", "rk", "--k", "3", "--n", "4"});
    CHECK(csv.code == 0);
    CHECK(csv.out == "kind,k,n,value,certified,witness\n\"rk\",3,4,3,true,1 2 4\n");
}

TEST_CASE("output file")
{
    auto path = temp_path("out.jsonl");
    CHECK(invoke({"--output", path.string(), "rk", "--k", "3", "--n", "9"}).code == 0);
    std::ifstream file(path);
    std::string line;
    std::getline(file, line);
    CHECK(nlohmann::json::parse(line)["value"] == 5);
}
