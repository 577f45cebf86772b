#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cli.hpp"
#include "support.hpp"

using namespace biorth;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "biorth");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::vector<std::string> kCanonical{"--a", "1", "--b", "1/2", "--c", "-1/3", "--d", "-1/4", "--q", "1/2"};

std::vector<std::string> with(std::string cmd, std::vector<std::string> extra = {})
{
    std::vector<std::string> args{std::move(cmd)};
    args.insert(args.end(), kCanonical.begin(), kCanonical.end());
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

}  // namespace

TEST_CASE("bimoment dump", "[cli]")
{
    const Result r = invoke(with("bimoment", {"--n", "0"}));
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    const Result one = invoke(with("bimoment", {"--n", "1"}));
    CHECK(one.out.find("8/23") != std::string::npos);
    const Result json = invoke(with("bimoment", {"--n", "1", "--format", "json"}));
    CHECK(nlohmann::json::parse(json.out)["entries"][0][1] == "18/23");
}

TEST_CASE("ldu report written to a file", "[cli]")
{
    const auto path = std::filesystem::temp_directory_path() / "biorth_cli_ldu.json";
    const Result r = invoke(with("ldu", {"--n", "16", "--out", path.string()}));
    CHECK(r.code == 0);
    std::ifstream f(path);
    const auto j = nlohmann::json::parse(f);
    CHECK(j["suite"] == "ldu");
    for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
    CHECK_FALSE(j.contains("timings_ms"));
    std::filesystem::remove(path);
}

TEST_CASE("reports are byte identical across runs", "[cli]")
{
    for (const char* cmd : {"ldu", "polys", "functional", "rep", "aw", "stationary"}) {
        const Result a = invoke(with(cmd)), b = invoke(with(cmd));
        INFO(cmd << "\n" << a.err);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    const Result t = invoke(with("ldu", {"--n", "4", "--timings"}));
    CHECK(nlohmann::json::parse(t.out).contains("timings_ms"));
}

TEST_CASE("stationary names the matching variant", "[cli]")
{
    const Result r = invoke(with("stationary", {"--L", "4"}));
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["matching_variants"] == nlohmann::json::array({"unshifted"}));
    CHECK(j["variants"][0]["matches_oracle"] == false);
    CHECK(j["oracle"]["probabilities"].size() == 16);

    const Result only_shifted = invoke(with("stationary", {"--L", "2", "--variant", "shifted"}));
    CHECK(only_shifted.code == 1);

    const Result csv = invoke(with("stationary", {"--L", "1", "--format", "csv"}));
    CHECK(csv.out.find("1,31/72,") != std::string::npos);
}

TEST_CASE("rate input is accepted when the roots are rational", "[cli]")
{
    const Result r = invoke({"bimoment", "--alpha", "3/8", "--beta", "4/9", "--gamma", "1/8", "--delta", "1/18", "--q",
                             "1/2", "--n", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("8/23") != std::string::npos);
    const Result irrational = invoke({"bimoment", "--alpha", "1/3", "--beta", "1/2", "--gamma", "1/7", "--delta", "0",
                                      "--q", "1/2"});
    CHECK(irrational.code == 2);
}

TEST_CASE("invalid configurations exit with status 2", "[cli]")
{
    CHECK(invoke({"bimoment", "--a", "0.5", "--b", "1", "--c", "0", "--d", "0", "--q", "1/2"}).code == 2);
    CHECK(invoke({"bimoment", "--a", "1", "--b", "1", "--c", "0", "--d", "0", "--q", "1"}).code == 2);
    CHECK(invoke({"bimoment", "--a", "1", "--b", "1/2", "--c", "-1/3", "--q", "1/2"}).code == 2);
    CHECK(invoke(with("ldu", {"--format", "csv"})).code == 2);
    CHECK(invoke(with("stationary", {"--L", "7"})).code == 2);
    CHECK(invoke(with("stationary", {"--variant", "sideways"})).code == 2);
    CHECK(invoke({"nonsense"}).code == 2);
    CHECK(invoke({}).code == 2);
    // g_2 = 0 at this point: ab q^2 = 1
    CHECK(invoke({"ldu", "--a", "4", "--b", "1", "--c", "-1/3", "--d", "-1/5", "--q", "1/2", "--n", "4"}).code == 2);
    CHECK(invoke({"aw", "--a", "1/2", "--b", "1/3", "--c", "0", "--d", "0", "--q", "1/3"}).code == 2);
}

TEST_CASE("verify-all over the built-in grid", "[cli]")
{
    const Result r = invoke({"verify-all", "--n", "6", "--L", "3", "--trials", "20", "--max-len", "6"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["grid"].size() == 7);
    CHECK(j["grid"][5]["label"] == "three-parameter");
}
