#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayspec/cli.hpp"
#include "cayspec/graph_io.hpp"

using namespace cayspec;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("cayspec_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("graph documents round-trip bit-exactly") {
    GraphDocument d = GraphDocument::from_graph(interval_cayley(16, 4));
    std::string text = d.serialize();
    GraphDocument back = GraphDocument::parse(text);
    CHECK(back.serialize() == text);

    GraphDocument gd = GraphDocument::from_graph(gnp_plus_clique(40, Rational(1, 5), Rational(1, 2), 3));
    std::string gtext = gd.serialize();
    CHECK(GraphDocument::parse(gtext).serialize() == gtext);

    CHECK_THROWS_AS(GraphDocument::parse("{\"format_version\":2,\"kind\":\"cayley\"}"),
                    std::invalid_argument);
}

TEST_CASE("generate and eig pipeline") {
    TempDir tmp;
    std::string path = tmp.file("c8.json");
    RunResult gen = run_cli({"generate", "--family", "interval", "--n", "8", "--k", "1", "-o", path});
    CHECK(gen.code == 0);
    CHECK(gen.out.find("order=8 degree=2") != std::string::npos);

    RunResult eig = run_cli({"eig", path, "--eps", "0.5"});
    CHECK(eig.code == 0);
    json j = json::parse(eig.out);
    CHECK(j["holds"] == false);
    CHECK(j.contains("failing_character"));

    RunResult strict = run_cli({"eig", path, "--eps", "0.5", "--strict"});
    CHECK(strict.code == 1);
}

TEST_CASE("disc exhaustive prints the witness set") {
    TempDir tmp;
    std::string path = tmp.file("g16.json");
    run_cli({"generate", "--family", "interval", "--n", "16", "--k", "4", "-o", path});
    RunResult disc = run_cli({"disc", path, "--delta", "0.2", "--mode", "exhaustive"});
    CHECK(disc.code == 0);
    json j = json::parse(disc.out);
    CHECK(j["verdict"] == "violated");
    CHECK(j["witness"].size() == 1);
    CHECK(j["delta"] == "1/5");

    RunResult strict =
        run_cli({"disc", path, "--delta", "0.2", "--mode", "exhaustive", "--strict"});
    CHECK(strict.code == 1);
}

TEST_CASE("witness output feeds back into the guided checker") {
    TempDir tmp;
    std::string path = tmp.file("g64.json");
    run_cli({"generate", "--family", "interval", "--n", "64", "--k", "8", "-o", path});
    RunResult wit = run_cli({"witness", path, "--eps", "0.5", "--seed", "11", "--max-tries", "60",
                             "--slack", "0.1"});
    REQUIRE(wit.code == 0);
    json j = json::parse(wit.out);
    REQUIRE(j["status"] == "found");
    std::string delta = j["violator"]["delta"];
    std::string setlist;
    for (const auto& v : j["violator"]["set"]) {
        if (!setlist.empty()) setlist += ",";
        setlist += std::to_string(v.get<u64>());
    }
    RunResult disc = run_cli(
        {"disc", path, "--delta", delta, "--mode", "guided", "--set", setlist, "--strict"});
    CHECK(disc.code == 1);
    json dj = json::parse(disc.out);
    CHECK(dj["verdict"] == "violated");
    CHECK(dj["deviation"] == j["violator"]["deviation"]);
}

TEST_CASE("reports are byte-identical across runs") {
    TempDir tmp;
    std::string path = tmp.file("g.json");
    run_cli({"generate", "--family", "cyclic-random", "--n", "128", "--p", "0.2", "--seed", "4",
             "-o", path});
    RunResult a = run_cli({"spectrum", path});
    RunResult b = run_cli({"spectrum", path});
    CHECK(a.out == b.out);
    RunResult w1 = run_cli({"witness", path, "--eps", "0.9", "--seed", "2"});
    RunResult w2 = run_cli({"witness", path, "--eps", "0.9", "--seed", "2"});
    CHECK(w1.out == w2.out);

    std::string p2 = tmp.file("g2.json");
    run_cli({"generate", "--family", "cyclic-random", "--n", "128", "--p", "0.2", "--seed", "4",
             "-o", p2});
    std::ifstream f1(path), f2(p2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
}

TEST_CASE("csv spectrum output") {
    TempDir tmp;
    std::string path = tmp.file("c6.json");
    run_cli({"generate", "--family", "interval", "--n", "6", "--k", "1", "-o", path});
    RunResult csv = run_cli({"spectrum", path, "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("index,t,lambda\n", 0) == 0);
    CHECK(csv.out.find("1,0,2\n") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    TempDir tmp;
    CHECK(run_cli({"nonsense"}).code == 2);
    CHECK(run_cli({"generate", "--family", "interval", "--n", "8"}).code == 2);  // no -o
    CHECK(run_cli({"eig", tmp.file("missing.json"), "--eps", "0.5"}).code == 2);
    CHECK(run_cli({"generate", "--family", "cyclic-random", "--n", "16", "--p", "0.5", "-o",
                   tmp.file("x.json")})
              .code == 2);  // no seed

    std::string gpath = tmp.file("generic.json");
    run_cli({"generate", "--family", "gnp-clique", "--n", "30", "--p", "0.2", "--alpha", "0.5",
             "--seed", "3", "-o", gpath});
    CHECK(run_cli({"eig", gpath, "--eps", "0.5"}).code == 2);
    CHECK(run_cli({"witness", gpath, "--eps", "0.5", "--seed", "1"}).code == 2);
    CHECK(run_cli({"disc", gpath, "--delta", "0.5", "--mode", "exhaustive"}).code == 2);
    CHECK(run_cli({"audit", gpath}).code == 2);
}

TEST_CASE("generic documents run dense spectrum, sampled disc, matrix walks") {
    TempDir tmp;
    std::string gpath = tmp.file("generic.json");
    run_cli({"generate", "--family", "gnp-clique", "--n", "40", "--p", "0.3", "--alpha", "0.4",
             "--seed", "3", "-o", gpath});
    RunResult spec = run_cli({"spectrum", gpath});
    CHECK(spec.code == 0);
    CHECK(json::parse(spec.out)["kind"] == "generic");

    RunResult disc =
        run_cli({"disc", gpath, "--delta", "0.3", "--mode", "sampled", "--samples", "50",
                 "--seed", "5"});
    CHECK(disc.code == 0);

    RunResult walks = run_cli({"walks", gpath, "--length", "4"});
    CHECK(walks.code == 0);
    CHECK(json::parse(walks.out).contains("count_matrix"));
}

TEST_CASE("bipartite guided pairs through the command line") {
    TempDir tmp;
    std::string path = tmp.file("g16.json");
    run_cli({"generate", "--family", "interval", "--n", "16", "--k", "4", "-o", path});
    std::string u = "0,1,2,3,4,5,6,7", w = "8,9,10,11,12,13,14,15";
    RunResult disc = run_cli(
        {"disc", path, "--delta", "0.2", "--mode", "guided", "--bipartite", "--pair", u + ";" + w});
    CHECK(disc.code == 0);
    json j = json::parse(disc.out);
    CHECK(j["bipartite"] == true);
    CHECK(j["verdict"] == "violated");
    CHECK(j["witness"].size() == 2);
}

TEST_CASE("audit command summarizes entries") {
    TempDir tmp;
    std::string path = tmp.file("g60.json");
    run_cli({"generate", "--family", "interval", "--n", "60", "--k", "6", "-o", path});
    RunResult audit = run_cli({"audit", path, "--t", "30", "--strict"});
    CHECK(audit.code == 0);
    json j = json::parse(audit.out);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["entries"].size() > 0);
}

TEST_CASE("blowup via the command line") {
    TempDir tmp;
    std::string base = tmp.file("c4.json");
    std::string blown = tmp.file("c4x2.json");
    run_cli({"generate", "--family", "interval", "--n", "4", "--k", "1", "-o", base});
    RunResult r = run_cli(
        {"generate", "--family", "blowup", "--input", base, "--k", "2", "-o", blown});
    CHECK(r.code == 0);
    CHECK(r.out.find("order=8 degree=4") != std::string::npos);
}
