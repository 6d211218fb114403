#include "cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = colorpart::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
    std::ifstream in(std::filesystem::path(GOLDEN_DIR) / name);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", name);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string line_starting(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(prefix, 0) == 0) return line;
    }
    return {};
}

}  // namespace

TEST_CASE("golden outputs") {
    CHECK(run({"--spec", "s=1;l=1", "exact", "--n-max", "5"}).out == golden("exact_p5.csv"));
    CHECK(run({"--spec", "s=1,3;l=2,2", "--format", "raw", "exact", "--n-max", "20"}).out ==
          golden("exact_c20.raw"));
    CHECK(run({"--spec", "s=1,3;l=2,2", "asymptotic", "--n", "1,9,100"}).out == golden("asymptotic_c.csv"));
    CHECK(run({"--spec", "s=1;l=1", "compare", "--n", "10,100,1000"}).out == golden("compare_p.csv"));
    CHECK(run({"--spec", "s=1;l=2", "regions", "--n", "100"}).out == golden("regions_l2_n100.json"));
    CHECK(run({"--spec", "s=1;l=1", "fit", "--n-geom", "256:8192"}).out == golden("fit_p.csv"));
}

TEST_CASE("every exact method produces the same series") {
    for (const char* method : {"divisor", "euler", "convolution"}) {
        const auto r = run({"--spec", "s=1,3;l=2,2", "--format", "raw", "exact", "--n-max", "20", "--method", method});
        CHECK(r.code == 0);
        CHECK(r.out == golden("exact_c20.raw"));
    }
    CHECK(run({"--spec", "s=1,3;l=2,2", "exact", "--n-max", "60", "--method", "all"}).code == 0);
}

TEST_CASE("spec from JSON") {
    CHECK(run({"--spec-json", R"({"s":[1,3],"l":[2,2]})", "--format", "raw", "exact", "--n-max", "20"}).out ==
          golden("exact_c20.raw"));
}

TEST_CASE("exit codes") {
    const auto invalid = run({"--spec", "s=2,3;l=1,1", "exact", "--n-max", "5"});
    CHECK(invalid.code == 2);
    CHECK(invalid.err.find("FirstModulusNotOne") != std::string::npos);

    CHECK(run({"--spec", "s=1;l=1", "fit", "--n", "10,20"}).code == 2);
    CHECK(run({"--spec", "s=1;l=1", "fit", "--n-geom", "256:8192", "--assert-slope-max", "-0.6"}).code == 1);
    CHECK(run({"--spec", "s=1;l=1", "fit", "--n-geom", "256:8192", "--assert-slope-max", "-0.35"}).code == 0);
    CHECK(run({"--spec", "s=1,2;l=3,3", "exact", "--n-max", "10", "--method", "convolution", "--budget", "10"})
              .code == 4);
    CHECK(run({"--spec", "s=1,2;l=2,2", "regions", "--n", "50", "--budget", "100"}).code == 4);
    CHECK(run({"--spec", "s=1;l=1", "regions", "--n", "50"}).code == 2);
    CHECK(run({"--spec", "s=1;l=2", "regions", "--n", "50", "--eta", "0.9"}).code == 2);
    CHECK(run({"exact", "--n-max", "5"}).code == 2);
    CHECK(run({"--spec", "s=1;l=1", "no-such-command"}).code == 2);
    CHECK(run({"--spec", "s=1;l=1", "--precision-bits", "32", "asymptotic", "--n", "5"}).code == 2);
}

TEST_CASE("precision controls digits but not leading values") {
    const auto low = run({"--spec", "s=1,3;l=2,2", "asymptotic", "--n", "100"});
    const auto high = run({"--spec", "s=1,3;l=2,2", "--precision-bits", "256", "asymptotic", "--n", "100"});
    REQUIRE(low.code == 0);
    REQUIRE(high.code == 0);
    const auto c_low = line_starting(low.out, "c=");
    const auto c_high = line_starting(high.out, "c=");
    CHECK(c_high.size() > c_low.size());
    CHECK(c_low.substr(0, 32) == c_high.substr(0, 32));

    ::setenv("COLORPART_PRECISION_BITS", "256", 1);
    const auto from_env = run({"--spec", "s=1,3;l=2,2", "asymptotic", "--n", "100"});
    ::unsetenv("COLORPART_PRECISION_BITS");
    CHECK(from_env.out == high.out);
}

TEST_CASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "colorpart_cli_output_test.csv";
    std::filesystem::remove(path);
    const auto r = run({"--spec", "s=1;l=1", "--output", path.string(), "exact", "--n-max", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    CHECK(text.str() == golden("exact_p5.csv"));
    std::filesystem::remove(path);
}

TEST_CASE("quadform TAP") {
    const auto r = run({"quadform", "--k", "4", "--trials", "20", "--rng-seed", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("TAP version 13\n1..20\n", 0) == 0);
    CHECK(r.out.find("not ok") == std::string::npos);
    CHECK(line_starting(r.out, "ok 20 ").size() > 0);
}

TEST_CASE("JSON comparison output") {
    const auto r = run({"--spec", "s=1;l=1", "--format", "json", "compare", "--n", "100"});
    CHECK(r.code == 0);
    CHECK(r.out.find(R"("n": 100)") != std::string::npos);
    CHECK(r.out.find("-4.3715186154104389684157") != std::string::npos);
}

TEST_CASE("selftest subset") {
    const auto r = run({"selftest", "--only", "3,6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1..2") != std::string::npos);
    CHECK(line_starting(r.out, "ok 1 ").size() > 0);
    CHECK(line_starting(r.out, "ok 2 ").size() > 0);
}
