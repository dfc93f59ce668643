#include "fpl/cli/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fpl::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args, const Environment& env = {})
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err, env);
    return {code, out.str(), err.str()};
}

nlohmann::ordered_json parse(const std::string& text) { return nlohmann::ordered_json::parse(text); }

TEST(Cli, HelpAndUsageErrors)
{
    EXPECT_EQ(call({"--help"}).code, kOk);
    EXPECT_EQ(call({}).code, kUsage);
    EXPECT_EQ(call({"nonsense"}).code, kUsage);
    EXPECT_EQ(call({"verify", "--max", "0"}).code, kUsage);
    EXPECT_EQ(call({"verify", "--min", "5", "--max", "4"}).code, kUsage);
    EXPECT_EQ(call({"verify", "--case", "odd-two"}).code, kUsage);
    EXPECT_EQ(call({"verify", "--format", "xml"}).code, kUsage);
    EXPECT_EQ(call({"verify", "--max", "20000"}).code, kUsage);
    EXPECT_EQ(call({"search-lambda", "--max", "10"}).code, kUsage);
    EXPECT_EQ(call({"conditions", "--lambda", "0", "--A", "2/1"}).code, kUsage);
    EXPECT_EQ(call({"conditions", "--lambda", "3/2", "--A", "1/2"}).code, kUsage);
    EXPECT_EQ(call({"orbit"}).code, kUsage);
    EXPECT_EQ(call({"orbit", "--seed", "0"}).code, kUsage);
    const auto bad = call({"verify", "--max", "-3"});
    EXPECT_EQ(bad.code, kUsage);
    EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, VerifyJsonRoundTrips)
{
    const auto r = call({"verify", "--max", "60", "--format", "json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto j = parse(r.out);
    EXPECT_EQ(j.dump(2) + "\n", r.out);
    EXPECT_EQ(j["command"], "verify");
    EXPECT_EQ(j["pairs_checked"], 3600);
    EXPECT_EQ(j["violations_total"], 0);
    EXPECT_TRUE(j["verified"].get<bool>());
    EXPECT_FALSE(j.contains("elapsed_ms"));
    EXPECT_EQ(j["per_case"].size(), 13u);
    EXPECT_TRUE(parse(call({"verify", "--max", "5", "--format", "json", "--timing"}).out).contains("elapsed_ms"));
}

TEST(Cli, ModesAgreeOnCounts)
{
    for (const char* mode : {"direct", "simplified", "cross", "bounds", "weights"}) {
        const auto r = call({"verify", "--mode", mode, "--max", "40", "--format", "json"});
        ASSERT_EQ(r.code, kOk) << mode << r.err;
        EXPECT_EQ(parse(r.out)["pairs_checked"], 1600) << mode;
    }
}

TEST(Cli, FindingsExitCode)
{
    const auto r = call({"verify", "--mode", "weights", "--M", "1", "--max", "10", "--format", "json",
                         "--max-violations", "3"});
    EXPECT_EQ(r.code, kFindings);
    const auto j = parse(r.out);
    EXPECT_EQ(j["violations"].size(), 3u);
    EXPECT_GT(j["violations_total"].get<int>(), 3);
    EXPECT_EQ(call({"orbit", "--seed", "27", "--cap", "10"}).code, kFindings);
}

TEST(Cli, OverflowExitCode)
{
    const std::string big = "170141183460469231731687303715884105727";
    EXPECT_EQ(call({"orbit", "--seed", big, "--map", "C"}).code, kOverflow);
}

TEST(Cli, OutputIndependentOfJobs)
{
    const std::vector<std::vector<std::string>> commands = {
        {"verify", "--max", "120", "--format", "json"},
        {"verify", "--mode", "weights", "--M", "1", "--max", "50", "--format", "json"},
        {"lemmas", "--max", "25", "--format", "json"},
        {"conditions", "--lambda", "1", "--A", "1/2", "--max", "80", "--format", "json"},
        {"decay", "--max", "400", "--format", "json"},
        {"search-lambda", "--A", "1/2", "--max", "30", "--format", "json"},
        {"orbit", "--seed", "97", "--format", "json"},
    };
    for (auto args : commands) {
        auto one = args;
        one.insert(one.end(), {"--jobs", "1"});
        auto four = args;
        four.insert(four.end(), {"--jobs", "4"});
        const auto a = call(one);
        const auto b = call(four);
        EXPECT_LE(a.code, kFindings) << args[0] << a.err;
        EXPECT_EQ(a.code, b.code) << args[0];
        EXPECT_EQ(a.out, b.out) << args[0];
        EXPECT_EQ(parse(a.out).dump(2) + "\n", a.out) << args[0];
    }
}

TEST(Cli, CsvOutput)
{
    const auto r = call({"verify", "--max", "10", "--format", "csv"});
    ASSERT_EQ(r.code, kOk);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "record,label,statistic,count,observed,x,y,bound,violations,case,quantity,value,detail");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.rfind("tally,", 0) == 0) ++rows;
    }
    EXPECT_EQ(rows, 13);
    const auto orbit = call({"orbit", "--seed", "6", "--format", "csv"});
    EXPECT_EQ(orbit.code, kOk);
    EXPECT_NE(orbit.out.find('\n'), std::string::npos);
}

TEST(Cli, TextOutputMentionsVerdict)
{
    const auto r = call({"verify", "--max", "10"});
    ASSERT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("even-even"), std::string::npos);
}

TEST(Cli, OrbitJson)
{
    const auto r = call({"orbit", "--seed", "3", "--map", "T", "--format", "json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto j = parse(r.out);
    EXPECT_EQ(j["seed"], 3);
    EXPECT_EQ(j["map"], "T");
    EXPECT_TRUE(j["reached_one"].get<bool>());
    EXPECT_EQ(j["peak"], 8);
    EXPECT_EQ(j["path"].front(), 3);
    EXPECT_EQ(j["path"].back(), 1);
    EXPECT_EQ(j["steps"], 5);
    EXPECT_EQ(parse(call({"orbit", "--seed", "1", "--map", "C", "--format", "json"}).out)["steps"], 3);
}

TEST(Cli, ConditionsAndSearchJson)
{
    const auto c = call({"conditions", "--lambda", "0", "--A", "1/2", "--max", "99", "--format", "json"});
    EXPECT_EQ(c.code, kOk) << c.err;
    const auto cj = parse(c.out);
    EXPECT_EQ(cj["per_case"].size(), 10u);
    std::uint64_t total = cj["holds"].get<std::uint64_t>() + cj["fails"].get<std::uint64_t>();
    EXPECT_EQ(total, 9801u);

    const auto s = call({"search-lambda", "--A", "1/3,1/2", "--max", "20", "--format", "json"});
    EXPECT_EQ(s.code, kOk) << s.err;
    const auto sj = parse(s.out);
    EXPECT_EQ(sj["grid"]["A"].size(), 2u);
    EXPECT_EQ(sj["best"]["lambda"].size(), 9u);
}

TEST(Cli, EnvironmentDefaults)
{
    const auto dir = std::filesystem::temp_directory_path() / "fpl_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "env.json";
    std::filesystem::remove(path);

    Environment env;
    env.output = path.string();
    env.jobs = "3";
    const auto r = call({"verify", "--max", "30", "--format", "json"}, env);
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    EXPECT_EQ(file.str(), call({"verify", "--max", "30", "--format", "json"}).out);

    Environment broken;
    broken.jobs = "many";
    EXPECT_EQ(call({"verify", "--max", "5"}, broken).code, kUsage);
}

TEST(Cli, OutputFlagWritesFile)
{
    const auto path = std::filesystem::temp_directory_path() / "fpl_cli_flag.json";
    std::filesystem::remove(path);
    const auto r = call({"lemmas", "--max", "10", "--format", "json", "--output", path.string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_TRUE(std::filesystem::exists(path));
    EXPECT_EQ(call({"verify", "--max", "5", "--output", "/nonexistent-dir/x.json"}).code, kUsage);
}

} // namespace
} // namespace fpl::cli
