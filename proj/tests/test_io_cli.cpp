#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

#include "gsf/table_io.hpp"

using namespace gsf;

namespace {

struct CliResult {
    int status = -1;
    std::string out;
};

// run the installed binary through the shell and capture stdout
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const char* bin = std::getenv("GSF_CLI_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = env_prefix + "'" + bin + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    CliResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int wait_status = pclose(p);
    r.status = WIFEXITED(wait_status) ? WEXITSTATUS(wait_status) : -1;
    return r;
}

io::TableRow sample_row(bool finite) {
    io::TableRow r;
    r.m = 2;
    r.n = 1;
    r.nu = 0.5;
    r.omega_mn = 0.375;
    r.re = 4.4937321585738506;
    if (finite) {
        r.im = -1.25;
        r.verdict = "finite";
        r.err = 1e-9;
    } else {
        r.verdict = "divergent-endpoint";
        r.err = std::nan("");
    }
    r.route = "frequency-domain";
    return r;
}

}  // namespace

TEST_CASE("seventeen digit formatting round-trips exactly") {
    for (double x : {1.0 / 3.0, 0.375, -4.4937321585738506, 1e-300, 6.02e23, 0.0}) {
        const std::string s = io::fmt17(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
}

TEST_CASE("csv carries the fixed header and the config echo") {
    io::ConfigEcho echo{{"command", "table"}, {"seed", "42"}};
    const auto text = io::emit_csv({sample_row(true), sample_row(false)}, echo);
    CHECK(text.find("# command = table\n") == 0);
    CHECK(text.find("# seed = 42\n") != std::string::npos);
    CHECK(text.find("m,n,nu,omega_mn,re,im,verdict,err,route\n") != std::string::npos);
    // a divergent row leaves the im column empty
    CHECK(text.find(",,divergent-endpoint,") != std::string::npos);
    // header comes before all data rows
    CHECK(text.find('#') < text.find("m,n,"));
}

TEST_CASE("json output parses back with the same content") {
    io::ConfigEcho echo{{"command", "table"}, {"seed", "42"}};
    const auto text = io::emit_json({sample_row(true), sample_row(false)}, echo);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["config"]["seed"] == "42");
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["m"] == 2);
    CHECK(j["rows"][0]["re"].get<double>() == 4.4937321585738506);
    CHECK(j["rows"][0]["im"].get<double>() == -1.25);
    CHECK(j["rows"][1]["im"].is_null());
    CHECK(j["rows"][1]["err"].is_null());  // nan has no json literal
    CHECK(j["rows"][1]["verdict"] == "divergent-endpoint");

    // emission is a pure function of its input
    CHECK(text == io::emit_json({sample_row(true), sample_row(false)}, echo));
}

TEST_CASE("cli computes a finite value and reports it") {
    const auto r = run_cli("gamma --transition 2,1 --power-cutoff 0.5");
    CHECK(r.status == 0);
    CHECK(r.out.find("re = 4.49373215857") != std::string::npos);
    CHECK(r.out.find("verdict = finite") != std::string::npos);
    CHECK(r.out.find("lifetime = ") != std::string::npos);
}

TEST_CASE("cli signals a divergent dispersive part with status 2") {
    const auto r = run_cli("gamma --transition 2,1 --power-cutoff 2");
    CHECK(r.status == 2);
    CHECK(r.out.find("im = divergent") != std::string::npos);

    const auto c = run_cli("classify --transition 2,1 --power-cutoff 2");
    CHECK(c.status == 2);
    CHECK(c.out.find("divergent-endpoint") != std::string::npos);
}

TEST_CASE("cli rejects malformed requests with status 1") {
    CHECK(run_cli("gamma --transition 1,2 --power-cutoff 0.5").status == 1);
    CHECK(run_cli("gamma --transition 2,1 --power-cutoff -0.5").status == 1);
    CHECK(run_cli("gamma").status == 1);  // neither transition nor omega
    CHECK(run_cli("no-such-command").status == 1);
    CHECK(run_cli("table --nu-grid 1:0:0.5").status == 1);
}

TEST_CASE("table output is byte stable for a fixed config and seed") {
    const std::string args = "table --nu-grid 0:1:0.5 --format json --seed 42";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);

    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["config"]["seed"] == "42");
    CHECK(j["rows"].size() == 9);  // three default transitions, three exponents
    for (const auto& row : j["rows"]) {
        CHECK(row["route"] == "frequency-domain");
        CHECK(row["re"].get<double>() >= 0.0);
    }
}

TEST_CASE("csv table has the header after the echo lines") {
    const auto r = run_cli("table --nu-grid 0.5:0.5:1 --format csv");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("m,n,nu,omega_mn,re,im,verdict,err,route\n") != std::string::npos);
    CHECK(r.out.rfind("# ", 0) == 0);
}

TEST_CASE("relative output paths land in the directory from the environment") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "gsf_io_test";
    fs::create_directories(dir);
    const fs::path target = dir / "rows.csv";
    fs::remove(target);
    const auto r = run_cli("table --nu-grid 0.5:0.5:1 --out rows.csv",
                           "GSF_OUTDIR='" + dir.string() + "' ");
    REQUIRE(r.status == 0);
    CHECK(fs::exists(target));
    std::ifstream f(target);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(text.find("m,n,nu,omega_mn,re,im,verdict,err,route\n") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("demo subcommand prints a converging table") {
    const auto r = run_cli("demo --which second-order");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("lambda") != std::string::npos);
    CHECK(r.out.find("-1") != std::string::npos);
}
