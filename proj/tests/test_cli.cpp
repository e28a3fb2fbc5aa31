#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "graphonlab/cli.hpp"
#include "graphonlab/io.hpp"
#include "graphonlab/upperreg.hpp"

using namespace graphonlab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch() {
    fs::path d(GRAPHONLAB_TEST_DIR);
    fs::create_directories(d);
    return d;
}

std::string write(const std::string& name, const std::string& body) {
    const auto p = scratch() / name;
    std::ofstream(p) << body;
    return p.string();
}

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int c = cli::run(args, o, e);
    return {c, o.str(), e.str()};
}

// Exit status of the installed binary, so the process boundary is exercised too.
int binary(const std::string& args) {
    const std::string cmd = std::string(GRAPHONLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string two_cliques_tsv() {
    std::string s = "#weighted-graph v1\n";
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 10; ++i)
            for (int j = i + 1; j < 10; ++j)
                s += "e\t" + std::to_string(10 * b + i) + "\t" + std::to_string(10 * b + j) + "\t1\n";
    return s;
}

std::string planted_clique_tsv() {
    std::string s = "#weighted-graph v1\nv\t99\t1\n";
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) s += "e\t" + std::to_string(i) + "\t" + std::to_string(j) + "\t1\n";
    return s;
}

const char* kChecker = R"({"type":"step_graphon","lengths":[0.5,0.5],"values":[[1,-1],[-1,1]]})";

}  // namespace

TEST_CASE("cli: norms and distance on the checkerboard") {
    const auto w = write("checker.json", kChecker);
    auto r = invoke({"norms", w});
    REQUIRE(r.code == cli::ok);
    auto j = json::parse(r.out);
    CHECK(j["cut"]["upper"].get<double>() == doctest::Approx(0.25));
    CHECK(j["infty_to_one"]["upper"].get<double>() == doctest::Approx(1.0));
    const auto z = write("zero.json", R"({"lengths":[1],"values":[[0]]})");
    r = invoke({"dist", w, z});
    REQUIRE(r.code == cli::ok);
    j = json::parse(r.out);
    CHECK(j["d_cut"]["upper"].get<double>() == doctest::Approx(0.25));
    CHECK(j["delta_lower"].get<double>() <= j["delta_upper"].get<double>() + 1e-12);
}

TEST_CASE("cli: parse errors exit 2") {
    const auto bad = write("bad.tsv", "#weighted-graph v1\ne\t0\tx\t1\n");
    auto r = invoke({"norms", bad});
    CHECK(r.code == cli::parse_error);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(invoke({"nonsense"}).code == cli::parse_error);
    CHECK(invoke({"motif", "1-1", write("ok.json", kChecker)}).code == cli::parse_error);
    const auto spec = write("bad_spec.json", R"({"kind":"no_such_kind"})");
    CHECK(invoke({"experiment", spec}).code == cli::parse_error);
}

TEST_CASE("cli: resolution guard exits 3") {
    const auto g = write("planted.tsv", planted_clique_tsv());
    CHECK(invoke({"--max-classes", "50", "norms", g}).code == cli::guard);
    CHECK(invoke({"norms", g}).code == cli::ok);
}

TEST_CASE("cli: regularize emits a certified partition for two cliques") {
    const auto g = write("two_cliques.tsv", two_cliques_tsv());
    const auto prefix = (scratch() / "tc_").string();
    auto r = invoke({"regularize", g, "--C", "1.5", "--eps", "0.1", "--out", prefix});
    REQUIRE(r.code == cli::ok);
    auto j = json::parse(r.out);
    CHECK(j["parts"].get<int>() == 2);
    CHECK(j["certified"].get<bool>());
    CHECK(j["error_cut"].get<double>() <= 0.15 + 1e-12);
    CHECK(j["min_part_weight"].get<double>() >= 0.05);
    CHECK(fs::exists(prefix + "partition.json"));
    CHECK(fs::exists(prefix + "graphon.json"));
}

TEST_CASE("cli: planted clique violation writes a recomputable certificate") {
    const auto g = write("planted.tsv", planted_clique_tsv());
    const auto cert = (scratch() / "cert.json").string();
    fs::remove(cert);
    auto r = invoke({"regularize", g, "--C", "1", "--eta", "0.1", "--certificate", cert});
    REQUIRE(r.code == cli::violation);
    std::ifstream in(cert);
    json j;
    in >> j;
    const auto P = io::partition_from_json(j["certificate"]);
    CHECK(confirms_violation(normalize(io::load_graph(g)), P, 1.0, 0.1, 2.0));
    CHECK(invoke({"check-upper", g, "--C", "1", "--eta", "0.1", "--budget", "16"}).code == cli::violation);
}

TEST_CASE("cli: dominant node exits 5") {
    const auto g = write("single.tsv", "#weighted-graph v1\nv\t0\t1\n");
    CHECK(invoke({"check-upper", g, "--C", "1", "--eta", "0.5"}).code == cli::dominant);
    CHECK(invoke({"regularize", g}).code == cli::dominant);
}

TEST_CASE("cli: sample writes a loadable graph") {
    const auto w = write("two_block.json", R"({"lengths":[0.5,0.5],"values":[[0.9,0.2],[0.2,0.5]]})");
    const auto out = (scratch() / "h.tsv").string();
    REQUIRE(invoke({"--seed", "3", "sample", w, "--n", "40", "--kind", "h", "--out", out}).code == cli::ok);
    CHECK(io::load_graph(out).size() <= 40);
    auto a = invoke({"--seed", "3", "sample", w, "--n", "40", "--kind", "g", "--rho", "0.5"});
    auto b = invoke({"--seed", "3", "sample", w, "--n", "40", "--kind", "g", "--rho", "0.5"});
    CHECK(a.out == b.out);
}

TEST_CASE("cli: experiment CSV is byte-identical across runs and thread counts") {
    const auto spec = write("chernoff.json",
                            R"({"kind":"chernoff","params":{"ns":[50],"ps":[0.5],"lams":[0.2,1],"draws":2000},"seeds":[0,1]})");
    const auto o1 = (scratch() / "c1.csv").string(), o2 = (scratch() / "c2.csv").string();
    REQUIRE(invoke({"experiment", spec, "--out", o1}).code == cli::ok);
    REQUIRE(invoke({"--threads", "3", "experiment", spec, "--out", o2}).code == cli::ok);
    std::ifstream f1(o1, std::ios::binary), f2(o2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().rfind("kind,n,seed,metric,value,certified\n", 0) == 0);
}

TEST_CASE("cli: motif densities") {
    const auto w = write("half.json", R"({"lengths":[1],"values":[[0.5]]})");
    auto r = invoke({"motif", "K3", w, "--p", "3"});
    REQUIRE(r.code == cli::ok);
    auto j = json::parse(r.out);
    CHECK(j["t"].get<double>() == doctest::Approx(0.125));
    CHECK(j.contains("generalized_holder_bound"));
}

TEST_CASE("cli binary: exit codes survive the process boundary") {
    const auto w = write("checker.json", kChecker);
    CHECK(binary("norms " + w) == 0);
    CHECK(binary("norms " + write("bad.tsv", "#weighted-graph v1\nq\n")) == 2);
    CHECK(binary("check-upper " + write("single.tsv", "#weighted-graph v1\nv\t0\t1\n") + " --eta 0.5") == 5);
    CHECK(binary("--help") == 0);
}
