#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using natanzon::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "natanzon");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::vector<std::string> kOsc{"--sigma1", "1", "--g2", "1", "--eta", "0.25"};
const std::vector<std::string> kCoul{"--sigma2", "1", "--g1", "-2", "--eta", "1"};
const std::vector<std::string> kMorse{"--c0", "1", "--g2", "1", "--g1", "-6"};

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

TEST_CASE("usage errors") {
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"bogus"}).code == 1);
    CHECK(invoke({"spectrum", "--g1", "abc"}).code == 1);
    CHECK(invoke(cat({"potential"}, kOsc)).code == 1);  // no r values
    CHECK(invoke(cat({"spectrum", "--format", "xml"}, kOsc)).code == 1);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("potential command") {
    const Result r = invoke(cat({"potential", "--r", "1", "2"}, kOsc));
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header == "r,h,V");
    double rr, h, v;
    char c1, c2;
    std::istringstream(row1) >> rr >> c1 >> h >> c2 >> v;
    CHECK(rr == 1.0);
    CHECK(std::abs(h - 1.0) < 1e-12);
    CHECK(std::abs(v - 1.0) < 1e-12);
    std::istringstream(row2) >> rr >> c1 >> h >> c2 >> v;
    CHECK(std::abs(h - 4.0) < 1e-12);
    CHECK(std::abs(v - 4.0) < 1e-12);

    const Result range = invoke(cat({"potential", "--r-min", "0.5", "--r-max", "2.5", "--points", "5"}, kOsc));
    CHECK(range.code == 0);
    CHECK(std::count(range.out.begin(), range.out.end(), '\n') == 6);
}

TEST_CASE("invalid parameters exit with the domain code") {
    const Result r = invoke({"potential", "--g1", "1", "--r", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("dh/dr = 2h/sqrt(R)") != std::string::npos);
    CHECK(invoke(cat({"potential", "--r", "-1"}, kOsc)).code == 2);
}

TEST_CASE("JSON mirrors CSV") {
    const Result csv = invoke(cat({"potential", "--r", "1", "2", "3.5"}, kOsc));
    const Result js = invoke(cat({"potential", "--r", "1", "2", "3.5", "--format", "json"}, kOsc));
    REQUIRE(js.code == 0);
    const auto doc = nlohmann::json::parse(js.out);
    CHECK(doc["command"] == "potential");
    CHECK(doc["columns"] == nlohmann::json::array({"r", "h", "V"}));
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    for (const auto& row : doc["rows"]) {
        std::getline(lines, line);
        double r, h, v;
        char c;
        std::istringstream(line) >> r >> c >> h >> c >> v;
        CHECK(row["r"].get<double>() == r);
        CHECK(row["h"].get<double>() == h);
        CHECK(row["V"].get<double>() == v);
    }
}

TEST_CASE("spectrum command") {
    const Result osc = invoke(cat({"spectrum", "--n-max", "3"}, kOsc));
    CHECK(osc.out == "n,epsilon,residual,threshold_flag\n0,3,0,0\n1,7,0,0\n2,11,0,0\n3,15,0,0\n");
    const Result coul = invoke(cat({"spectrum", "--n-max", "1"}, kCoul));
    CHECK(coul.out == "n,epsilon,residual,threshold_flag\n0,-0.25,0,0\n1,-0.0625,0,0\n");
    const Result morse = invoke(cat({"spectrum", "--n-max", "5", "--format", "json"}, kMorse));
    const auto doc = nlohmann::json::parse(morse.out);
    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][1]["threshold_flag"] == 1);
    CHECK(doc["rows"][0]["n"] == 0);
}

TEST_CASE("green command") {
    const Result g = invoke(cat({"green", "--epsilon", "5", "--r", "1", "2", "--r-prime", "1", "2"}, kOsc));
    REQUIRE(g.code == 0);
    std::istringstream lines(g.out);
    std::string header, r11, r12, r21, r22;
    std::getline(lines, header);
    std::getline(lines, r11);
    std::getline(lines, r12);
    std::getline(lines, r21);
    std::getline(lines, r22);
    CHECK(header == "r,r_prime,epsilon,re,im");
    // Swapping r and r' leaves re, im untouched.
    CHECK(r12.substr(r12.find(",5,")) == r21.substr(r21.find(",5,")));
    const Result pole = invoke(cat({"green", "--epsilon", "3", "--r", "1", "--r-prime", "2"}, kOsc));
    CHECK(pole.code == 2);
    CHECK(pole.err.find("pole") != std::string::npos);
    CHECK(invoke(cat({"green", "--r", "1", "--r-prime", "2"}, kOsc)).code == 1);
}

TEST_CASE("config file") {
    {
        std::ofstream f("cli_config_ok.json");
        f << R"({"sigma1": 1, "g2": 1, "eta": 0.25, "g1": 4, "n_max": 1})";
    }
    const Result from_file = invoke({"spectrum", "--config", "cli_config_ok.json"});
    CHECK(from_file.out == "n,epsilon,residual,threshold_flag\n0,7,0,0\n1,11,0,0\n");
    // Flags win over the file.
    const Result flag_wins = invoke({"spectrum", "--config", "cli_config_ok.json", "--g1", "0"});
    CHECK(flag_wins.out == "n,epsilon,residual,threshold_flag\n0,3,0,0\n1,7,0,0\n");
    {
        std::ofstream f("cli_config_bad.json");
        f << R"({"sigma1": 1, "g2": 1, "colour": "red"})";
    }
    const Result bad = invoke({"spectrum", "--config", "cli_config_bad.json"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("colour") != std::string::npos);
    CHECK(invoke({"spectrum", "--config", "does_not_exist.json"}).code == 1);
}

TEST_CASE("output is deterministic") {
    const auto args = cat({"green", "--epsilon", "-0.15625", "--r", "0.5", "3", "9", "--r-prime", "2"}, kCoul);
    CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("verify command") {
    const Result ok = invoke({"verify"});
    CHECK(ok.code == 0);
    const auto doc = nlohmann::json::parse(ok.out);
    CHECK(doc["passed"] == true);
    CHECK(doc["criteria"].size() == 8);

    const Result perturbed = invoke({"verify", "--bch-a-scale", "1.01"});
    CHECK(perturbed.code == 3);
    const auto pdoc = nlohmann::json::parse(perturbed.out);
    CHECK(pdoc["passed"] == false);
    for (const auto& c : pdoc["criteria"]) CHECK(c["passed"] == (c["id"] != 6));

    // Thresholds below what double precision can deliver fail loudly.
    const Result tight = invoke({"verify", "--tolerance-scale", "1e-6"});
    CHECK(tight.code == 3);
    CHECK(tight.err.find("FAIL") != std::string::npos);
}
