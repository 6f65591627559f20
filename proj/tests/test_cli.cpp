#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir()
{
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path()
                   / ("persist_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args)
{
    const fs::path out = scratch_dir() / "stdout.txt";
    const fs::path err = scratch_dir() / "stderr.txt";
    const std::string cmd = std::string("\"") + CLI_BINARY_PATH + "\" " + args
                          + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty())
            lines.push_back(line);
    return lines;
}

std::vector<double> csv_row(const std::string& line)
{
    std::vector<double> vals;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        vals.push_back(std::stod(cell));
    return vals;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("bogus").code == 2);
    CHECK(run_cli("distribution --nope").code == 2);
    CHECK(run_cli("exponent").code == 2);
    CHECK(run_cli("exponent --m 0.2 --q 3").code == 2);
    CHECK(run_cli("asymptotics --phi 0.8 --xi 0.5").code == 2);
    CHECK(run_cli("simulate --t2 40 --ratios 2").code == 2);
    CHECK(run_cli("distribution --method bogus").code == 2);
    CHECK(run_cli("distribution --ell-step 0").code == 2);
    CHECK(run_cli("eigens --parity bogus").code == 2);
    CHECK(run_cli("simulate --length 2000 --m 1.5").code == 2);
    CHECK(run_cli("verify bogus").code == 2);
}

TEST_CASE("help lists the subcommands") {
    const auto r = run_cli("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("distribution") != std::string::npos);
    CHECK(r.out.find("simulate") != std::string::npos);
    CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("exponent reports the closed forms") {
    const auto r = run_cli("exponent --m 0");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.size() == 4);
    CHECK(std::abs(j.at("kappa").get<double>() - 0.375) < 1e-15);
    CHECK(std::abs(j.at("dhp_theta_hat").get<double>() - 0.375) < 1e-15);
    CHECK(std::abs(j.at("phi").get<double>() - 1.0) < 1e-12);
    CHECK(std::abs(j.at("A").get<double>() + 0.375) < 1e-14);

    const auto r3 = run_cli("exponent --q 3");
    REQUIRE(r3.code == 0);
    const json j3 = json::parse(r3.out);
    CHECK(std::abs(j3.at("dhp_theta_hat").get<double>()
                   - 0.5379508207137832) < 1e-12);
    CHECK(std::abs(j3.at("kappa").get<double>() - 0.2349947712611963) < 1e-12);
}

TEST_CASE("distribution single window row") {
    const auto r = run_cli("distribution --ell 1");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "ell,p_plus,p_minus,p_total,d_plus,d_minus,kappa");
    const auto row = csv_row(lines[1]);
    REQUIRE(row.size() == 7);
    CHECK(row[0] == 1.0);
    CHECK(std::abs(row[3] - 0.7034177101236332) < 1e-8);
    CHECK(row[1] == row[2]);
    CHECK(std::abs(row[1] - 0.5 * row[3]) < 1e-15);
    CHECK(std::abs(row[6] - 0.375) < 1e-15);
}

TEST_CASE("distribution grid is monotone in the window") {
    const auto r = run_cli("distribution --ell-max 2 --ell-step 0.5");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 6);
    const auto first = csv_row(lines[1]);
    CHECK(first[0] == 0.0);
    CHECK(first[3] == 1.0);
    CHECK(first[4] == 1.0);
    CHECK(first[5] == 1.0);
    double prev = 2.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = csv_row(lines[i]);
        CHECK(row[3] < prev);
        prev = row[3];
    }
}

TEST_CASE("eigens exports a descending spectrum") {
    const auto r = run_cli("eigens --n 40 --k 5");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "index,lambda");
    std::vector<double> lambda;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = csv_row(lines[i]);
        CHECK(row[0] == double(i - 1));
        lambda.push_back(row[1]);
    }
    CHECK(std::abs(lambda[0] - 0.5819762411076870) < 1e-6);
    for (std::size_t i = 1; i < lambda.size(); ++i)
        CHECK(lambda[i] < lambda[i - 1]);
    CHECK(lambda.back() > 0.0);
}

TEST_CASE("asymptotics constants in both regimes") {
    const auto r = run_cli("asymptotics --xi 0.75");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j.at("A").get<double>() + 0.1714088401835664) < 1e-12);
    CHECK(std::abs(j.at("B").get<double>() - 0.1273164758592148) < 1e-10);
    CHECK(std::abs(j.at("C").get<double>() - 0.1287832177145160) < 1e-10);
    CHECK(std::abs(j.at("phi").get<double>() - 0.7699465438373841) < 1e-12);
    CHECK(std::abs(j.at("decay").get<double>()
                   - 2.0 * (1.0 - 0.7699465438373841)) < 1e-12);

    const auto rc = run_cli("asymptotics");
    REQUIRE(rc.code == 0);
    const json jc = json::parse(rc.out);
    CHECK(std::abs(jc.at("a").get<double>() + 0.375) < 1e-14);
    CHECK(std::abs(jc.at("b").get<double>() + 2.1350307005161498) < 1e-10);
    CHECK(std::abs(jc.at("c").get<double>() - 6.0 * std::log(2.0)) < 1e-12);

    const fs::path csv = scratch_dir() / "asym.csv";
    const auto rf = run_cli("asymptotics --xi 0.75 --out " + csv.string());
    REQUIRE(rf.code == 0);
    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 20);
    CHECK(lines[0] == "ell,logdet,h");
}

TEST_CASE("simulate writes a reproducible CSV with a manifest") {
    const std::string base = "simulate --length 2000 --t1 20 --ratios 2,4 "
                             "--replicas 4 --seed 42 --threads 2 --out ";
    const fs::path csv1 = scratch_dir() / "sim1.csv";
    const fs::path csv2 = scratch_dir() / "sim2.csv";

    const auto r1 = run_cli(base + csv1.string());
    REQUIRE(r1.code == 0);
    const json summary = json::parse(r1.err);
    CHECK(summary.contains("exponent"));
    CHECK(summary.at("walls_monotone").get<bool>());
    CHECK(summary.at("events").get<long long>() > 0);

    const auto lines = lines_of(slurp(csv1));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "t1,t2,p_plus_hat,p_minus_hat,stderr,n");
    const auto row = csv_row(lines[1]);
    CHECK(row[0] == 20.0);
    CHECK(row[1] == 40.0);
    CHECK(row[2] > 0.0);
    CHECK(row[2] < 1.0);

    json m1 = json::parse(slurp(csv1.string() + ".manifest.json"));
    CHECK(m1.at("command") == "simulate");
    CHECK(m1.at("version") == "1.0.0");
    CHECK(m1.at("seed").get<std::uint64_t>() == 42);
    CHECK(m1.at("topology") == "ring");
    CHECK(m1.at("columns").size() == 6);
    CHECK(m1.contains("timestamp"));
    CHECK(m1.at("ratios") == json::array({2.0, 4.0}));

    const auto r2 = run_cli(base + csv2.string());
    REQUIRE(r2.code == 0);
    CHECK(slurp(csv1) == slurp(csv2));

    json m2 = json::parse(slurp(csv2.string() + ".manifest.json"));
    for (auto* m : {&m1, &m2}) {
        m->erase("timestamp");
        m->erase("csv");
    }
    CHECK(m1 == m2);
}

TEST_CASE("simulate single endpoint via t2") {
    const fs::path csv = scratch_dir() / "sim_t2.csv";
    const auto r = run_cli("simulate --length 2000 --t1 20 --t2 40 "
                           "--replicas 2 --seed 7 --out " + csv.string());
    REQUIRE(r.code == 0);
    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 2);
    const auto row = csv_row(lines[1]);
    CHECK(row[1] == 40.0);
}

TEST_CASE("verify oracle suite passes") {
    const auto r = run_cli("verify oracle");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("checks passed") != std::string::npos);
}
