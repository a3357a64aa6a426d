#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trih/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace trih;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out = "cli_out_" + std::to_string(counter) + ".txt";
    std::string err = "cli_err_" + std::to_string(counter) + ".txt";
    ++counter;
    std::string cmd = std::string(TRIH_CLI_PATH) + " " + args + " > " + out + " 2> " + err;
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    std::remove(out.c_str());
    std::remove(err.c_str());
    return r;
}

std::string data(const std::string& name) { return std::string(TRIH_DATA_DIR) + "/" + name; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("check passes on the tropical line") {
    RunResult r = run_cli("check " + data("line.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"status\": \"pass\"") != std::string::npos);
}

TEST_CASE("check with the geometric certificate") {
    RunResult r = run_cli("check " + data("p2.json") + " --geometric");
    CHECK(r.exit_code == 0);
}

TEST_CASE("check fails on unbalanced weights, naming the origin") {
    RunResult r = run_cli("check " + data("bad_weights.json"));
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("balancing") != std::string::npos);
    CHECK(r.out.find("fail") != std::string::npos);
}

TEST_CASE("malformed JSON exits 2") {
    write_file("malformed.json", "{ not json");
    RunResult r = run_cli("check malformed.json");
    CHECK(r.exit_code == 2);
    std::remove("malformed.json");
}

TEST_CASE("unknown keys are rejected with exit 2") {
    write_file("extra.json",
               "{\"rank\":1,\"rays\":[[1],[-1]],\"cones\":[[0],[1]],"
               "\"weights\":{\"0\":1,\"1\":1},\"color\":\"blue\"}");
    RunResult r = run_cli("check extra.json");
    CHECK(r.exit_code == 2);
    std::remove("extra.json");
}

TEST_CASE("schema violations all exit 2") {
    const char* cases[] = {
        // ray length != rank
        "{\"rank\":2,\"rays\":[[1]],\"cones\":[[0]],\"weights\":{\"0\":1}}",
        // cone index out of range
        "{\"rank\":1,\"rays\":[[1]],\"cones\":[[3]],\"weights\":{\"0\":1}}",
        // non-positive weight
        "{\"rank\":1,\"rays\":[[1],[-1]],\"cones\":[[0],[1]],\"weights\":{\"0\":0,\"1\":1}}",
        // missing weight
        "{\"rank\":1,\"rays\":[[1],[-1]],\"cones\":[[0],[1]],\"weights\":{\"0\":1}}",
        // weight key out of range
        "{\"rank\":1,\"rays\":[[1],[-1]],\"cones\":[[0],[1]],\"weights\":{\"0\":1,\"7\":1}}",
        // fractional rank
        "{\"rank\":1.5,\"rays\":[],\"cones\":[],\"weights\":{}}",
    };
    int idx = 0;
    for (const char* text : cases) {
        std::string name = "schema_" + std::to_string(idx++) + ".json";
        write_file(name, text);
        RunResult r = run_cli("check " + name);
        CHECK(r.exit_code == 2);
        std::remove(name.c_str());
    }
}

TEST_CASE("geometric certification through the CLI on a rank-4 fan") {
    RunResult r = run_cli("check " + data("twoplanes.json") + " --geometric");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("geometric") != std::string::npos);
}

TEST_CASE("ih table of Trop(P2) through the CLI") {
    RunResult r = run_cli("ih " + data("p2.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"0,0\": 1") != std::string::npos);
    CHECK(r.out.find("\"1,1\": 1") != std::string::npos);
    CHECK(r.out.find("\"2,2\": 1") != std::string::npos);
    CHECK(r.out.find("\"0,1\": 0") != std::string::npos);
}

TEST_CASE("chow tables of the blow-up of P2") {
    RunResult r = run_cli("chow " + data("blp2.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"1,1\": 2") != std::string::npos);
    CHECK(r.out.find("\"rank\": 2") != std::string::npos);
    CHECK(r.out.find("\"ch_dims\": [") != std::string::npos);
}

TEST_CASE("hcoh on the two-planes example is asymmetric (negative control)") {
    RunResult r = run_cli("hcoh " + data("twoplanes.json"));
    CHECK(r.exit_code == 0);
    // H^{0,0} = 1 while H^{2,2} = 2: duality symmetry fails for H
    CHECK(r.out.find("\"0,0\": 1") != std::string::npos);
    CHECK(r.out.find("\"2,2\": 2") != std::string::npos);
}

TEST_CASE("verify kunneth through the CLI") {
    RunResult r = run_cli("verify " + data("p1.json") + " --kunneth " + data("p1.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("kunneth") != std::string::npos);
    CHECK(r.out.find("\"status\": \"pass\"") != std::string::npos);
}

TEST_CASE("verify --theorem61 fails at balancing before any table") {
    RunResult r = run_cli("verify " + data("bad_weights.json") + " --theorem61");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("balancing") != std::string::npos);
    CHECK(r.out.find("\"tables\": {}") != std::string::npos);
}

TEST_CASE("verify --all passes on curves") {
    CHECK(run_cli("verify " + data("p1.json") + " --all").exit_code == 0);
    CHECK(run_cli("verify " + data("line.json") + " --all").exit_code == 0);
    CHECK(run_cli("verify " + data("line2w.json") + " --all").exit_code == 0);
}

TEST_CASE("verify --duality passes on the surfaces") {
    CHECK(run_cli("verify " + data("p1xp1.json") + " --duality").exit_code == 0);
    CHECK(run_cli("verify " + data("blp2.json") + " --duality").exit_code == 0);
}

TEST_CASE("ih --structure native matches barycentric for curves") {
    RunResult a = run_cli("ih " + data("line.json") + " --structure native");
    RunResult b = run_cli("ih " + data("line.json") + " --structure barycentric");
    CHECK(a.exit_code == 0);
    // same table, different digest line aside the structure flag is not
    // part of the report, so the bodies agree
    CHECK(a.out == b.out);
}

TEST_CASE("verify --duality passes on the two-planes example") {
    CHECK(run_cli("verify " + data("twoplanes.json") + " --duality").exit_code == 0);
}

TEST_CASE("the max-dim guard refuses oversized input with exit 2") {
    RunResult r = run_cli("ih " + data("p2.json") + " --max-dim 1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("output is byte-stable across runs") {
    RunResult a = run_cli("ih " + data("line.json"));
    RunResult b = run_cli("ih " + data("line.json"));
    CHECK(a.out == b.out);
    RunResult c = run_cli("chow " + data("p2.json"));
    RunResult d = run_cli("chow " + data("p2.json"));
    CHECK(c.out == d.out);
}

TEST_CASE("TRIH_THREADS does not change results") {
    RunResult a = run_cli("ih " + data("p1xp1.json"));
    setenv("TRIH_THREADS", "4", 1);
    RunResult b = run_cli("ih " + data("p1xp1.json"));
    unsetenv("TRIH_THREADS");
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("every shipped example passes check") {
    for (const char* name :
         {"p1.json", "p2.json", "p1xp1.json", "blp2.json", "line.json", "line2w.json",
          "twoplanes.json", "point.json", "linexline.json", "linexp1.json"}) {
        RunResult r = run_cli("check " + data(name));
        CHECK(r.exit_code == 0);
    }
}

TEST_CASE("every shipped example round-trips parse -> serialize -> parse") {
    for (const char* name :
         {"p1.json", "p2.json", "p1xp1.json", "blp2.json", "line.json", "line2w.json",
          "twoplanes.json", "point.json", "linexline.json", "linexp1.json"}) {
        FanCycleFile f = load_fan_cycle(data(name));
        FanCycleFile g = parse_fan_cycle(serialize_fan_cycle(f));
        CHECK(f.rank == g.rank);
        CHECK(f.rays == g.rays);
        CHECK(f.cones == g.cones);
        CHECK(f.weights == g.weights);
        // and serialization itself is stable
        CHECK(serialize_fan_cycle(f) == serialize_fan_cycle(g));
    }
}

TEST_CASE("exit codes are only 0, 1, 2") {
    for (const std::string& args :
         {std::string("check ") + data("line.json"), std::string("check ") + data("bad_weights.json"),
          std::string("check does_not_exist.json"), std::string("ih ") + data("p1.json")}) {
        RunResult r = run_cli(args);
        CHECK((r.exit_code == 0 || r.exit_code == 1 || r.exit_code == 2));
    }
}
