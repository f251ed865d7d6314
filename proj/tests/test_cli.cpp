#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = STREAMCOMM_CLI_PATH;

int run_cli(const std::string& args) {
    std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("streamcomm_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& sub = "") const {
        return (sub.empty() ? path : path / sub).string();
    }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("synth -> run -> eval pipeline achieves high purity") {
    TempDir dir;
    CHECK(run_cli("synth --topics 3 --guests 30 --epochs 3 --vocab 40"
                  " --docs-per-epoch 60 --overlap 0 --seed 42 --output-dir " +
                  dir.str()) == 0);
    REQUIRE(fs::exists(dir.path / "records.jsonl"));
    REQUIRE(fs::exists(dir.path / "truth.jsonl"));

    CHECK(run_cli("run --input " + dir.str("records.jsonl") +
                  " --max-clusters 3 --tau 0.2 --alpha 1.0 --seed 42"
                  " --output-dir " + dir.str()) == 0);
    REQUIRE(fs::exists(dir.path / "snapshots.jsonl"));

    CHECK(run_cli("eval --snapshots " + dir.str("snapshots.jsonl") + " --truth " +
                  dir.str("truth.jsonl") + " --output-dir " + dir.str()) == 0);
    json report = json::parse(slurp(dir.path / "eval.json"));
    CHECK(report["items"].get<int>() == 180);
    CHECK(report["purity"].get<double>() >= 0.95);
}

TEST_CASE("run is deterministic across invocations") {
    TempDir dir;
    REQUIRE(run_cli("synth --topics 2 --guests 10 --epochs 2 --docs-per-epoch 30"
                    " --seed 5 --output-dir " + dir.str()) == 0);
    std::string before = slurp(dir.path / "records.jsonl");

    fs::create_directories(dir.path / "a");
    fs::create_directories(dir.path / "b");
    REQUIRE(run_cli("run --input " + dir.str("records.jsonl") +
                    " --seed 7 --output-dir " + dir.str("a")) == 0);
    REQUIRE(run_cli("run --input " + dir.str("records.jsonl") +
                    " --seed 7 --output-dir " + dir.str("b")) == 0);
    CHECK(slurp(dir.path / "a" / "snapshots.jsonl") ==
          slurp(dir.path / "b" / "snapshots.jsonl"));

    // the input file is never mutated
    CHECK(slurp(dir.path / "records.jsonl") == before);
}

TEST_CASE("graph exports both formats") {
    TempDir dir;
    REQUIRE(run_cli("synth --topics 2 --guests 8 --epochs 2 --docs-per-epoch 10"
                    " --seed 3 --output-dir " + dir.str()) == 0);
    CHECK(run_cli("graph --input " + dir.str("records.jsonl") +
                  " --format edgelist --edge-threshold 0.1 --output-dir " +
                  dir.str("g")) == 0);
    CHECK(fs::exists(dir.path / "g" / "epoch_0.tsv"));
    CHECK(fs::exists(dir.path / "g" / "epoch_1.tsv"));

    CHECK(run_cli("graph --input " + dir.str("records.jsonl") +
                  " --format dot --output-dir " + dir.str("d")) == 0);
    std::string dot = slurp(dir.path / "d" / "epoch_0.dot");
    CHECK(dot.find("graph") == 0);

    CHECK(run_cli("graph --input " + dir.str("records.jsonl") +
                  " --format nope --output-dir " + dir.str()) == 64);
}

TEST_CASE("report writes lifecycle events") {
    TempDir dir;
    REQUIRE(run_cli("synth --topics 2 --guests 10 --epochs 4 --docs-per-epoch 24"
                    " --seed 2 --output-dir " + dir.str()) == 0);
    REQUIRE(run_cli("run --input " + dir.str("records.jsonl") +
                    " --max-clusters 2 --tau 0.2 --alpha 1.0 --output-dir " +
                    dir.str()) == 0);
    CHECK(run_cli("report --snapshots " + dir.str("snapshots.jsonl") +
                  " --output-dir " + dir.str()) == 0);
    CHECK(fs::exists(dir.path / "events.jsonl"));
}

TEST_CASE("report on a single epoch produces no events but succeeds") {
    TempDir dir;
    REQUIRE(run_cli("synth --topics 2 --guests 10 --epochs 1 --docs-per-epoch 20"
                    " --seed 2 --output-dir " + dir.str()) == 0);
    REQUIRE(run_cli("run --input " + dir.str("records.jsonl") + " --output-dir " +
                    dir.str()) == 0);
    CHECK(run_cli("report --snapshots " + dir.str("snapshots.jsonl") +
                  " --output-dir " + dir.str()) == 0);
    CHECK(slurp(dir.path / "events.jsonl").empty());
}

TEST_CASE("baseline reports clustering quality") {
    TempDir dir;
    REQUIRE(run_cli("synth --topics 2 --guests 10 --epochs 1 --docs-per-epoch 40"
                    " --overlap 0 --seed 4 --output-dir " + dir.str()) == 0);
    CHECK(run_cli("baseline --input " + dir.str("records.jsonl") + " --k 2 --truth " +
                  dir.str("truth.jsonl") + " --output-dir " + dir.str()) == 0);
    json report = json::parse(slurp(dir.path / "baseline.json"));
    CHECK(report["converged"].get<bool>());
    CHECK(report["iterations"].get<int>() <= 300);
    CHECK(report["purity"].get<double>() >= 0.95);
}

TEST_CASE("exit codes") {
    TempDir dir;
    SUBCASE("missing input file is an I/O error") {
        CHECK(run_cli("run --input /nonexistent/path.jsonl --output-dir " +
                      dir.str()) == 2);
    }
    SUBCASE("invalid tau is a config error") {
        std::ofstream(dir.path / "empty.jsonl").close();
        CHECK(run_cli("run --input " + dir.str("empty.jsonl") +
                      " --tau 7 --output-dir " + dir.str()) == 64);
    }
    SUBCASE("unknown flag is a config error") {
        CHECK(run_cli("run --input x --no-such-flag") == 64);
    }
    SUBCASE("malformed record is a data error") {
        std::ofstream bad(dir.path / "bad.jsonl");
        bad << "{not json}\n";
        bad.close();
        CHECK(run_cli("run --input " + dir.str("bad.jsonl") + " --output-dir " +
                      dir.str()) == 65);
    }
    SUBCASE("bad config file key is a config error") {
        std::ofstream cfg(dir.path / "cfg.conf");
        cfg << "no_such_key=1\n";
        cfg.close();
        std::ofstream(dir.path / "empty.jsonl").close();
        CHECK(run_cli("run --input " + dir.str("empty.jsonl") + " --config " +
                      dir.str("cfg.conf") + " --output-dir " + dir.str()) == 64);
    }
}

TEST_CASE("config file values apply and flags override them") {
    TempDir dir;
    REQUIRE(run_cli("synth --topics 2 --guests 10 --epochs 1 --docs-per-epoch 20"
                    " --seed 6 --output-dir " + dir.str()) == 0);
    std::ofstream cfg(dir.path / "cfg.conf");
    cfg << "# engine settings\n"
        << "max_clusters = 2\n"
        << "tau = 0.2\n"
        << "alpha = 1.0\n";
    cfg.close();

    fs::create_directories(dir.path / "a");
    fs::create_directories(dir.path / "b");
    REQUIRE(run_cli("run --input " + dir.str("records.jsonl") + " --config " +
                    dir.str("cfg.conf") + " --output-dir " + dir.str("a")) == 0);
    // override tau with an invalid value to prove the flag wins
    CHECK(run_cli("run --input " + dir.str("records.jsonl") + " --config " +
                  dir.str("cfg.conf") + " --tau 7 --output-dir " +
                  dir.str("b")) == 64);
}
