#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// end-to-end runs of the installed binary; ctest runs with the build
// directory as cwd

namespace {

const char* kBin = "./opchaos";

int run(const std::string& args, std::string* out = nullptr) {
    const std::string redirect = " > cli_test_stdout.txt 2> cli_test_stderr.txt";
    const int rc = std::system((std::string(kBin) + " " + args + redirect).c_str());
    if (out) {
        std::ifstream f("cli_test_stdout.txt");
        std::stringstream ss;
        ss << f.rdbuf();
        *out = ss.str();
    }
#ifdef WEXITSTATUS
    return WEXITSTATUS(rc);
#else
    return rc;
#endif
}

void write_file(const std::string& name, const std::string& content) {
    std::ofstream f(name);
    f << content;
}

} // namespace

TEST_CASE("classify subcommand with expectations") {
    write_file("cli_const2.json",
               R"({"system": {"kind": "shift", "domain": "unilateral",
                   "space": {"kind": "lp", "p": 1},
                   "generator": {"family": "Constant", "value": 2.0}}})");
    write_file("cli_half.json",
               R"({"system": {"kind": "shift", "domain": "unilateral",
                   "space": {"kind": "lp", "p": 1},
                   "generator": {"family": "Constant", "value": 0.5}}})");

    std::string out;
    CHECK(run("classify --config cli_const2.json --property li-yorke "
              "--expect holds", &out) == 0);
    CHECK(out.find("\"holds\": true") != std::string::npos);
    CHECK(out.find("exact-by-closed-form") != std::string::npos);

    // expected refutation matches
    CHECK(run("classify --config cli_half.json --property li-yorke "
              "--expect refuted") == 0);
    // mismatch exits 3
    CHECK(run("classify --config cli_half.json --property li-yorke "
              "--expect holds") == 3);
}

TEST_CASE("config errors exit 2 with pointer paths") {
    write_file("cli_bad.json",
               R"({"system": {"kind": "shift", "domain": "unilateral",
                   "space": {"kind": "lp", "p": 1},
                   "generator": {"family": "Constant", "value": 1.0,
                                 "typo_key": 1}}})");
    CHECK(run("classify --config cli_bad.json --property li-yorke") == 2);
    std::ifstream f("cli_test_stderr.txt");
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("/system/generator/typo_key") != std::string::npos);

    CHECK(run("classify --config cli_missing.json --property li-yorke") == 2);
}

TEST_CASE("norms subcommand emits csv") {
    std::string out;
    CHECK(run("norms --config cli_const2.json --n-max 10 --csv cli_norms.csv",
              &out) == 0);
    std::ifstream f("cli_norms.csv");
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string csv = ss.str();
    CHECK(csv.find("n,norm") == 0);
    CHECK(csv.find("\n1,2\n") != std::string::npos);
    CHECK(csv.find("\n2,4\n") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}

TEST_CASE("certificate subcommand replays a built-in schedule") {
    write_file("cli_tower.json",
               R"({"system": {"kind": "shift", "domain": "unilateral",
                   "space": {"kind": "lp", "p": 1},
                   "generator": {"family": "RatioPower", "q": 1.0}}})");
    write_file("cli_cert.json", R"({"builtin": "tower", "ks": [3]})");
    std::string out;
    CHECK(run("certificate --config cli_tower.json --certificate cli_cert.json "
              "--expect certified-by-theorem", &out) == 0);
    CHECK(out.find("\"count\": 43") != std::string::npos);
}

TEST_CASE("density subcommand") {
    write_file("cli_evens.json",
               R"({"index_set": {"kind": "eventually-periodic",
                   "preperiod": [], "period": [0, 1]}})");
    std::string out;
    CHECK(run("density --config cli_evens.json --horizon 1000", &out) == 0);
    CHECK(out.find("\"exact_lower\": 0.5") != std::string::npos);
    CHECK(out.find("\"count\": 500") != std::string::npos);
}

TEST_CASE("oracle-check subcommand") {
    std::string out;
    CHECK(run("oracle-check --config cli_const2.json --n 5 --window-lo 1 "
              "--window-hi 20", &out) == 0);
    CHECK(out.find("\"brute_force\": 32") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
    std::string a, b;
    run("classify --config cli_const2.json --property power-bounded", &a);
    run("classify --config cli_const2.json --property power-bounded", &b);
    CHECK(a == b);
    CHECK(!a.empty());
}
