#include "nrow/board.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef NROW_CLI_PATH
#error "NROW_CLI_PATH must point at the nrow executable"
#endif

namespace {

namespace fs = std::filesystem;

struct Run
{
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("nrow_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Run cli(const std::string& args)
{
    const auto out = scratch() / "stdout.txt";
    const auto err = scratch() / "stderr.txt";
    const std::string cmd = std::string("'") + NROW_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write(const std::string& name, const std::string& text)
{
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("simulate")
{
    auto r = cli("simulate --n 5 --schedule identity --maker sprint --breaker fill --seed 1");
    CHECK(r.code == 0);
    CHECK(r.out == "win_time=5\n");

    r = cli("simulate --n 1 --maker greedy --breaker direction --seed 3");
    CHECK(r.code == 0);
    CHECK(r.out == "win_time=1\n");

    r = cli("simulate --n 200 --maker greedy --breaker direction --seed 7 --cap 300");
    CHECK(r.code == 0);
    REQUIRE(r.out.rfind("win_time=", 0) == 0);
    const auto value = r.out.substr(9, r.out.size() - 10);
    if (value != "none")
        CHECK(std::stoll(value) >= 31);
}

TEST_CASE("simulate writes a transcript and diagnostics")
{
    const auto tr = scratch() / "game.txt";
    const auto diag = scratch() / "diag.csv";
    auto r = cli("simulate --n 6 --maker greedy --breaker line_spoil --seed 2 --cap 9 --r 1,3 --out '" + tr.string() +
                  "' --diagnostics '" + diag.string() + "'");
    CHECK(r.code == 0);
    const auto parsed = nrow::parse_transcript(slurp(tr));
    CHECK(parsed.config.n == 6);
    CHECK(parsed.moves.size() <= 9);
    CHECK_NOTHROW(nrow::replay(parsed));
    const auto csv = slurp(diag);
    CHECK(csv.rfind("t,L_t,A_1,A_3\n1,1,8,0\n", 0) == 0);
}

TEST_CASE("usage errors exit with 64")
{
    CHECK(cli("simulate --n 5 --maker sprint --breaker fill").code == 64);
    CHECK(cli("simulate --n 5 --maker sprint --breaker fill --seed 1 --bogus").code == 64);
    CHECK(cli("simulate --n 5 --maker nobody --breaker fill --seed 1").code == 64);
    CHECK(cli("simulate --n 5 --maker line_spoil --breaker fill --seed 1").code == 64);
    CHECK(cli("simulate --n 5 --maker sprint --breaker fill --seed 1 --schedule 1,2").code == 64);
    CHECK(cli("solve").code == 64);
    CHECK(cli("").code == 64);
    CHECK(cli("frobnicate").code == 64);
}

TEST_CASE("solve")
{
    auto r = cli("solve --n 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("winner=second win_turn=2") != std::string::npos);
    CHECK(r.err.find("# ") == 0);

    r = cli("solve --n 1");
    CHECK(r.out.find("winner=first win_turn=1") != std::string::npos);

    r = cli("solve --n 4 --radius 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("winner=first win_turn=3") != std::string::npos);

    r = cli("solve --n 4 --node-cap 3");
    CHECK(r.code == 3);
    CHECK(r.out.find("inconclusive") != std::string::npos);
}

TEST_CASE("sweep")
{
    const auto spec = write("grid.spec", "n=55\nmatchups=sprint:fill,greedy:direction\nseeds=2\n");
    auto r = cli("sweep --spec '" + spec.string() + "' --no-wall-clock");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,schedule,maker,breaker,seed,win_time,ratio,max_L,wall_ms\n55,\"2,0,2,1\",sprint,fill,1,55,1.0000,", 0) == 0);
    CHECK(cli("sweep --spec '" + spec.string() + "' --no-wall-clock --threads 3").out == r.out);

    const auto out = scratch() / "grid.csv";
    CHECK(cli("sweep --spec '" + spec.string() + "' --out '" + out.string() + "'").code == 0);
    CHECK(slurp(out).rfind("n,schedule,", 0) == 0);

    CHECK(cli("sweep --spec '" + write("bad.spec", "n=5\nmatchups=sprint\n").string() + "'").code == 65);
    CHECK(cli("sweep --spec '" + (scratch() / "missing.spec").string() + "'").code == 65);
}

TEST_CASE("selftest")
{
    auto r = cli("selftest");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(cli("selftest --seed 99").code == 0);
}
