#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qzeta/cli.hpp"

using namespace qzeta;
using qzeta::cli::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "qzeta");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name)
{
    fs::path d = fs::temp_directory_path() / ("qzeta_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    return d;
}

}  // namespace

TEST_CASE("reports")
{
    Result r = run({"rho", "--k", "4"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["command"] == "rho");
    CHECK(j["outputs"]["coefficients"] == json::array({"1", "4", "1"}));
    CHECK(j["checks"][0]["pass"] == true);
    CHECK(j.contains("version"));

    Result o = run({"ord", "--l", "2", "--n", "5"});
    CHECK(o.code == 0);
    CHECK(json::parse(o.out)["outputs"]["ord"] == 2);

    // Big integers are strings.
    Result d = run({"dnp", "--n", "30", "--p", "10"});
    CHECK(d.code == 0);
    CHECK(json::parse(d.out)["outputs"]["value"].is_string());
}

TEST_CASE("exit codes")
{
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"rho"}).code == 2);                                  // missing --k
    CHECK(run({"rho", "--k", "4", "--bogus"}).code == 2);           // unknown flag
    CHECK(run({"linform", "--params", "1,2,2,3"}).code == 2);      // inadmissible
    CHECK(run({"linform", "--params", "1,1"}).code == 2);          // malformed
    CHECK(run({"measure", "--family", "nope"}).code == 2);
    CHECK(run({"--format", "xml", "rho", "--k", "3"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    // A failing verification: three terms cannot give narrow enclosures.
    Result e = run({"stability", "--params", "9,7,9,16", "--terms", "3"});
    CHECK(e.code == 1);
    CHECK(json::parse(e.out)["checks"][1]["pass"] == false);
}

TEST_CASE("csv output")
{
    Result r = run({"--format", "csv", "apery", "--n-max", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("apery,n,normalized,ok,phi1_order\n", 0) == 0);
    CHECK(r.out.find("19,2,19,true,0") != std::string::npos);
    CHECK(r.out.find("check,limits equal Apery numbers up to sign,pass") != std::string::npos);

    Result s = run({"mertens", "--n", "100", "--format", "csv"});
    CHECK(s.out.rfind("key,value\n", 0) == 0);
}

TEST_CASE("linear-form cache")
{
    const fs::path dir = fresh_dir("cache");
    const std::vector<std::string> args = {"linform", "--params", "9,7,9,16", "--cache-dir", dir.string()};
    Result cold = run(args);
    CHECK(cold.code == 0);
    const fs::path file = dir / "linform" / "zeta1_9-7-9-16.json";
    CHECK(fs::exists(file));
    // No temporary files are left behind.
    for (const auto& e : fs::directory_iterator(dir / "linform")) CHECK(e.path().extension() == ".json");

    Result warm = run(args);
    CHECK(warm.out == cold.out);

    // Round trip is lossless.
    LinearForm f = linform(ParamsZ1{9, 7, 9, 16}, {});
    LinearForm g = cli::linform_from_json(json::parse(cli::to_json(f).dump()));
    CHECK(g.A == f.A);
    CHECK(g.B == f.B);
    CHECK(g.M == f.M);
    CHECK(g.params == f.params);

    // A corrupted entry is recomputed and replaced.
    {
        std::ofstream bad(file);
        bad << "{\"schema\": \"qzeta.linform/1\", \"kind\": \"zeta1\", \"params\": [9,7,9,16], \"A\": 1}";
    }
    Result again = run(args);
    CHECK(again.out == cold.out);
    CHECK(json::parse(std::ifstream(file))["A"].is_object());

    // The environment variable selects the directory when no flag is given.
    const fs::path env_dir = fresh_dir("env");
    ::setenv("QZETA_CACHE", env_dir.string().c_str(), 1);
    CHECK(cli::resolve_cache_dir("") == env_dir);
    CHECK(cli::resolve_cache_dir("/x") == fs::path("/x"));
    Result viaenv = run({"cyclotomic", "--l", "12"});
    CHECK(viaenv.code == 0);
    CHECK(fs::exists(env_dir / "cyclotomic" / "12.json"));
    Result cyc_warm = run({"cyclotomic", "--l", "12"});
    CHECK(cyc_warm.out == viaenv.out);
    ::unsetenv("QZETA_CACHE");

    fs::remove_all(dir);
    fs::remove_all(env_dir);
}

TEST_CASE("determinism across thread counts")
{
    Result a = run({"inclusion", "--family", "theorem1", "--n-max", "3", "--threads", "1"});
    Result b = run({"inclusion", "--family", "theorem1", "--n-max", "3", "--threads", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j["outputs"]["rows"].size() == 3);
}

TEST_CASE("subcommands")
{
    CHECK(run({"series", "--k", "3", "--order", "40"}).code == 0);
    CHECK(run({"cyclotomic", "--l", "105"}).code == 0);
    CHECK(run({"group", "--kind", "zeta1", "--which", "arithmetic"}).code == 0);
    CHECK(run({"omega", "--family", "theorem1", "--n", "2"}).code == 0);
    CHECK(run({"stability", "--family", "theorem1", "--n", "1"}).code == 0);
    CHECK(run({"jacobi", "--order", "200"}).code == 0);

    Result m = run({"measure", "--family", "bv", "--n-max", "12"});
    CHECK(m.code == 0);
    json j = json::parse(m.out);
    CHECK(j["outputs"]["M_coeff"] == "3/2");
    CHECK(std::fabs(j["outputs"]["mu_bound"].get<double>() - 2.50828476) < 1e-8);
}
