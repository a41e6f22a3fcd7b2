#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ipb/cli.hpp"
#include "ipb/report_json.hpp"

using namespace ipb;

namespace {

struct RunResult {
    int code;
    Json json;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    RunResult r{code, Json(), err.str()};
    if (!out.str().empty() && out.str()[0] == '{') {
        r.json = Json::parse(out.str());
    }
    return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << text;
    return path.string();
}

std::string ex43_path() {
    return write_temp("ipb_cli_ex43.json",
                      R"({"atoms":["w1","w2","w3"],"gambles":{"X":[-1,1,2]},"lower":{"X":0.75}})");
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("check levels and exit codes") {
    const std::string file = ex43_path();
    for (const std::string level : {"asl", "coherence", "2coherence"}) {
        const RunResult r = run_cli({"check", "--level", level, file});
        CHECK(r.code == 0);
        CHECK(r.json["schema"] == 1);
        CHECK(r.json["pass"] == true);
    }

    const std::string bad = write_temp(
        "ipb_cli_bad.json",
        R"({"atoms":["w1","w2"],"gambles":{"X":[0,1]},"lower":{"X":0.8},"upper":{"X":0.2}})");
    const RunResult r = run_cli({"check", "--level", "2coherence", bad});
    CHECK(r.code == 1);
    CHECK(r.json["pass"] == false);
    CHECK(r.json["failing_pair"]["x0"] == "X");
    CHECK(r.json["failing_pair"]["x1"] == "-X");
}

TEST_CASE("extend reproduces the worked example") {
    const std::string file = ex43_path();
    const RunResult lo = run_cli({"extend", file, "--expr", "X^2"});
    CHECK(lo.code == 0);
    CHECK(lo.json["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

    const RunResult hi = run_cli({"extend", file, "--expr", "X^2", "--max"});
    CHECK(hi.json["value"].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("bound jensen and improved-jensen") {
    const std::string file = ex43_path();
    const RunResult j = run_cli({"bound", "jensen", file, "--x", "X", "--power", "2"});
    CHECK(j.code == 0);
    bool found = false;
    for (const auto& r : j.json["reports"]) {
        if (r["fired"] == "convex-lower-at-lpr") {
            found = true;
            CHECK(r["bound"].get<double>() == doctest::Approx(0.5625));
        }
    }
    CHECK(found);
    CHECK(j.json["exact_lower"].get<double>() == doctest::Approx(1.0));

    const RunResult im = run_cli({"bound", "improved-jensen", file, "--x", "X"});
    CHECK(im.code == 0);
    CHECK(im.json["m1"]["bound"].get<double>() == doctest::Approx(1.0));
    CHECK_FALSE(im.json.contains("m2"));
}

TEST_CASE("bound markov on a shifted expression") {
    const std::string file = ex43_path();
    const RunResult r = run_cli({"bound", "markov", file, "--x", "X + 1", "--a", "3"});
    CHECK(r.code == 0);
    CHECK(r.json["report"]["bound"].get<double>() == doctest::Approx(1.75 / 3.0));
    // negative gambles are refused
    CHECK(run_cli({"bound", "markov", file, "--x", "X", "--a", "3"}).code == 2);
}

TEST_CASE("bound cantelli with the automatic three-sigma epsilon") {
    const std::string file = ex43_path();
    const RunResult r =
        run_cli({"bound", "cantelli", file, "--x", "X", "--c", "0.75", "--eps", "auto3sigma"});
    CHECK(r.code == 0);
    CHECK(r.json["report"]["bound"].get<double>() == 0.1);
    CHECK(r.json["report"]["consistency_required"] == "asl");

    // centre outside the range: infeasible, exit 3
    CHECK(run_cli({"bound", "cantelli", file, "--x", "X", "--c", "3", "--eps", "1"}).code == 3);
}

TEST_CASE("bound cantelli-coh and variance") {
    const std::string file = ex43_path();
    const RunResult v = run_cli({"variance", file, "--x", "X"});
    CHECK(v.code == 0);
    CHECK(v.json["lower_variance"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(v.json["upper_variance"].get<double>() == doctest::Approx(2.1875).epsilon(1e-6));

    const RunResult c = run_cli({"bound", "cantelli-coh", file, "--x", "X", "--eps", "0.5"});
    CHECK(c.code == 0);
    REQUIRE(c.json["reports"].size() == 4);
    CHECK(c.json["reports"][1]["bound"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("bound chebyshev") {
    const std::string file = ex43_path();
    const RunResult r = run_cli({"bound", "chebyshev", file, "--x", "X", "--b", "2"});
    CHECK(r.code == 0);
    // upper envelope of (X - 0.75)^2 is 2.1875; bound = 2.1875 / 4
    CHECK(r.json["report"]["bound"].get<double>() == doctest::Approx(2.1875 / 4.0).epsilon(1e-9));
}

TEST_CASE("compare") {
    const std::string nonneg = write_temp(
        "ipb_cli_nonneg.json",
        R"({"atoms":["w1","w2","w3"],"gambles":{"X":[0,2,3]},"lower":{"X":1.75}})");
    const RunResult r = run_cli({"compare", nonneg, "--x", "X", "--eps", "1"});
    CHECK(r.code == 0);
    CHECK(r.json.contains("eps2"));
    CHECK(r.json["markov_bound"].get<double>() > 0.0);
}

TEST_CASE("verify validates and refutes reports") {
    const std::string file = ex43_path();
    std::ostringstream out, err;
    REQUIRE(cli::run({"bound", "cantelli", file, "--x", "X", "--c", "0.75", "--eps", "1.5"}, out,
                     err) == 0);
    const std::string report_path = write_temp("ipb_cli_report.json", out.str());

    const RunResult ok = run_cli({"verify", file, "--report", report_path});
    CHECK(ok.code == 0);
    CHECK(ok.json["valid"] == true);

    // corrupt the bound: claim far below the exact envelope
    Json tampered = Json::parse(out.str());
    tampered["report"]["bound"] = -0.5;
    const std::string bad_path = write_temp("ipb_cli_tampered.json", json_to_string(tampered));
    const RunResult bad = run_cli({"verify", file, "--report", bad_path});
    CHECK(bad.code == 1);
    CHECK(bad.json["valid"] == false);
}

TEST_CASE("verify covers extend reports") {
    const std::string file = ex43_path();
    std::ostringstream out, err;
    REQUIRE(cli::run({"extend", file, "--expr", "(X - 0.75)^2", "--max"}, out, err) == 0);
    const std::string report_path = write_temp("ipb_cli_extend_report.json", out.str());
    const RunResult ok = run_cli({"verify", file, "--report", report_path});
    CHECK(ok.code == 0);
}

TEST_CASE("usage and file errors exit with 2") {
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"check", "/nonexistent/file.json"}).code == 2);
    const std::string broken = write_temp("ipb_cli_broken.json", "{not json");
    CHECK(run_cli({"check", broken}).code == 2);
    CHECK(run_cli({"extend", ex43_path(), "--expr", "Y^2"}).code == 2);
}

TEST_CASE("infeasible assessments exit with 3") {
    const std::string sureloss = write_temp(
        "ipb_cli_sureloss.json",
        R"({"atoms":["w1","w2"],"gambles":{"X":[0,1]},"lower":{"X":5}})");
    CHECK(run_cli({"extend", sureloss, "--expr", "X^2"}).code == 3);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_SUITE_END();
