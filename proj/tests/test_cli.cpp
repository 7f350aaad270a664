#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <fmt/core.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

Result cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = fmt::format("{} '{}' {} 2>&1", env, KMGWO_CLI, args);
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / fmt::format("kmgwo-cli-{}", ::getpid())) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("run prints the final best") {
    const auto r = cli("run --problem sphere --algo gwo --agents 10 --iters 50 --seed 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("gwo sphere seed=4 best=") != std::string::npos);

    const auto k = cli("run --problem cec19:f3 --agents 10 --iters 20");
    CHECK(k.code == 0);
    CHECK(k.out.find("decision=") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2") {
    CHECK(cli("").code == 2);
    CHECK(cli("run --bogus").code == 2);
    CHECK(cli("run --problem nope").code == 2);
    CHECK(cli("run --problem sphere --agents 3").code == 2);
    CHECK(cli("run --problem sphere --algo pso").code == 2);
    CHECK(cli("run").code == 2);
    CHECK(cli("run --problem sphere --config /nonexistent/kmgwo.cfg").code == 2);
    CHECK(cli("stats only-one.csv").code == 2);
    CHECK(cli("--help").code == 0);
}

TEST_CASE("data errors exit with 3") {
    CHECK(cli("run --problem f5 --data-dir /nonexistent/kmgwo").code == 3);
    CHECK(cli("run --problem f5", "KMGWO_DATA_DIR=/nonexistent/kmgwo").code == 3);
    CHECK(cli("stats /nonexistent/a.csv /nonexistent/b.csv").code == 3);

    TempDir dir;
    std::ofstream(dir.path / "bad.csv") << "algorithm,problem,seed,iteration,best_fitness\ngwo,p,1,0\n";
    CHECK(cli(fmt::format("stats '{0}' '{0}'", (dir.path / "bad.csv").string())).code == 3);
}

TEST_CASE("runtime failures exit with 4") {
    CHECK(cli("run --problem sphere --iters 5 --out /proc/kmgwo/run.csv").code == 4);
}

TEST_CASE("flags override the configuration file") {
    TempDir dir;
    const auto cfg = dir.path / "run.cfg";
    std::ofstream(cfg) << "problem = sphere\nagents = abc\niters = 5\n";
    CHECK(cli(fmt::format("run --config '{}'", cfg.string())).code == 2);
    CHECK(cli(fmt::format("run --config '{}' --agents 8", cfg.string())).code == 0);
}

TEST_CASE("suite, vessel and stats write and read run records") {
    TempDir dir;
    const auto suite = cli(fmt::format("suite --problem f3 --reps 3 --iters 5 --agents 8 --out '{}'",
                                       (dir.path / "suite").string()));
    CHECK(suite.code == 0);
    CHECK(fs::exists(dir.path / "suite" / "summary.csv"));
    CHECK(fs::exists(dir.path / "suite" / "runs.csv"));

    CHECK(cli(fmt::format("vessel --algo gwo --reps 3 --iters 5 --out '{}'", (dir.path / "a").string())).code == 0);
    CHECK(cli(fmt::format("vessel --algo kmgwo --reps 3 --iters 5 --out '{}'", (dir.path / "b").string())).code == 0);
    const auto stats = cli(fmt::format("stats '{}' '{}'", (dir.path / "a" / "runs.csv").string(),
                                       (dir.path / "b" / "runs.csv").string()));
    CHECK(stats.code == 0);
    CHECK(stats.out.find("n_a=3") != std::string::npos);
    CHECK(stats.out.find("p=") != std::string::npos);
}

TEST_CASE("reproduce writes three tables") {
    TempDir dir;
    const auto cfg = dir.path / "repro.cfg";
    std::ofstream(cfg) << "agents = 6\niters = 4\nreps = 3\nvessel-reps = 2\n";
    const auto r = cli(fmt::format("reproduce --config '{}' --out '{}'", cfg.string(),
                                   (dir.path / "tables").string()));
    CHECK(r.code == 0);
    for (const char* name : {"table1_cec2019.csv", "table3_pvalues.csv", "table4_vessel.csv"})
        CHECK(fs::exists(dir.path / "tables" / name));
    CHECK(cli(fmt::format("reproduce --config '{}' --agents 3", cfg.string())).code == 2);
}
