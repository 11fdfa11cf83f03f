// nrow: simulate, sweep, solve, serve, selftest.

#include "nrow/board.hpp"
#include "nrow/engine.hpp"
#include "nrow/selftest.hpp"
#include "nrow/service.hpp"
#include "nrow/solver.hpp"
#include "nrow/strategies.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitStrategyBug = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;
constexpr int kExitBadSpec = 65;

bool write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    out << text;
    return static_cast<bool>(out);
}

nrow::GameMode parse_mode(const std::string& m)
{
    return m == "TW" ? nrow::GameMode::TwoWinner : nrow::GameMode::MakerBreaker;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Accelerated n-in-a-row: strategies, simulation, sweeps and small-n solving"};
    app.require_subcommand(1);
    const std::vector<std::string> names(nrow::kStrategyNames.begin(), nrow::kStrategyNames.end());

    // simulate
    auto* sim = app.add_subcommand("simulate", "Play one game between two named strategies");
    std::int64_t sim_n = 0;
    std::string sim_schedule = "identity", sim_mode = "MB", sim_maker, sim_breaker, sim_out, sim_diag;
    std::uint64_t sim_seed = 0;
    std::int64_t sim_cap = 0;
    std::vector<std::int64_t> sim_r;
    sim->add_option("--n", sim_n, "Winning run length")->required()->check(CLI::PositiveNumber);
    sim->add_option("--schedule", sim_schedule, "identity | const:k | evenA,evenB,oddA,oddC");
    sim->add_option("--mode", sim_mode, "MB (Maker-Breaker) or TW (two-winner)")->check(CLI::IsMember({"MB", "TW"}));
    sim->add_option("--maker", sim_maker)->required()->check(CLI::IsMember(names));
    sim->add_option("--breaker", sim_breaker)->required()->check(CLI::IsMember(names));
    sim->add_option("--seed", sim_seed)->required();
    sim->add_option("--cap", sim_cap, "Turn cap (default 4n+4)")->check(CLI::PositiveNumber);
    sim->add_option("--out", sim_out, "Write the game transcript here");
    sim->add_option("--diagnostics", sim_diag, "Write per-turn L_t and |A_r^t| as CSV here");
    sim->add_option("--r", sim_r, "Thresholds r for |A_r^t|")->delimiter(',');

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a grid of games and write the telemetry table");
    std::string sweep_spec, sweep_out;
    unsigned sweep_threads = 0;
    bool sweep_no_clock = false;
    sweep->add_option("--spec", sweep_spec, "key=value sweep file")->required();
    sweep->add_option("--out", sweep_out, "CSV output (default stdout)");
    sweep->add_option("--threads", sweep_threads, "Worker threads (0 = all cores)");
    sweep->add_flag("--no-wall-clock", sweep_no_clock, "Leave wall_ms empty for byte-identical output");

    // solve
    auto* solve = app.add_subcommand("solve", "Solve the two-winner game for small n");
    std::int64_t solve_n = 0, solve_radius = 0, solve_cap = 50'000'000;
    bool solve_no_memo = false;
    solve->add_option("--n", solve_n)->required()->check(CLI::PositiveNumber);
    solve->add_option("--radius", solve_radius, "Relevance radius (default n)")->check(CLI::PositiveNumber);
    solve->add_option("--node-cap", solve_cap, "Give up after this many nodes")->check(CLI::PositiveNumber);
    solve->add_flag("--no-memo", solve_no_memo, "Disable the transposition table");

    // serve
    auto* serve = app.add_subcommand("serve", "Serve the interactive play API");
    std::string serve_host = "127.0.0.1", serve_dir, serve_static;
    int serve_port = 8080;
    serve->add_option("--host", serve_host);
    serve->add_option("--port", serve_port)->check(CLI::Range(0, 65535));
    serve->add_option("--transcripts", serve_dir, "Persist and recover sessions in this directory");
    serve->add_option("--static", serve_static, "Serve a browser client from this directory");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "Run the built-in consistency checks");
    std::uint64_t self_seed = 1;
    selftest->add_option("--seed", self_seed, "Seed for the randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*sim) {
        nrow::GameConfig config;
        try {
            config = {sim_n, nrow::parse_schedule(sim_schedule), parse_mode(sim_mode)};
            config.validate();
            if (sim_maker == "line_spoil")
                throw std::invalid_argument("line_spoil only plays the Breaker side");
        } catch (const std::exception& e) {
            std::cerr << "usage error: " << e.what() << '\n';
            return kExitUsage;
        }
        const std::int64_t cap = sim_cap > 0 ? sim_cap : 4 * sim_n + 4;
        nrow::GameRecord rec;
        try {
            rec = nrow::play_game(config, sim_maker, sim_breaker, sim_seed, cap, sim_r);
        } catch (const nrow::StrategyBug& e) {
            std::cerr << "strategy bug: " << e.what() << '\n';
            return kExitStrategyBug;
        }
        if (!sim_out.empty() && !write_file(sim_out, nrow::write_transcript(config, rec.moves))) {
            std::cerr << "cannot write " << sim_out << '\n';
            return 1;
        }
        if (!sim_diag.empty()) {
            std::ostringstream d;
            d << "t,L_t";
            for (auto r : sim_r)
                d << ",A_" << r;
            d << '\n';
            for (const auto& e : rec.timeline) {
                d << e.t << ',' << e.l_t;
                for (auto a : e.a_r)
                    d << ',' << a;
                d << '\n';
            }
            if (!write_file(sim_diag, d.str())) {
                std::cerr << "cannot write " << sim_diag << '\n';
                return 1;
            }
        }
        std::cout << "win_time=" << (rec.win_time ? std::to_string(*rec.win_time) : "none") << '\n';
        return 0;
    }

    if (*sweep) {
        nrow::SweepSpec spec;
        try {
            std::ifstream in(sweep_spec);
            if (!in)
                throw std::invalid_argument("cannot read " + sweep_spec);
            std::stringstream text;
            text << in.rdbuf();
            spec = nrow::parse_sweep_spec(text.str());
        } catch (const std::exception& e) {
            std::cerr << "bad sweep spec: " << e.what() << '\n';
            return kExitBadSpec;
        }
        const auto rows = nrow::run_sweep(spec, sweep_threads);
        const auto csv = nrow::format_sweep_csv(rows, !sweep_no_clock);
        if (sweep_out.empty()) {
            std::cout << csv;
        } else if (!write_file(sweep_out, csv)) {
            std::cerr << "cannot write " << sweep_out << '\n';
            return 1;
        }
        return 0;
    }

    if (*solve) {
        nrow::SolverOptions options;
        options.radius = solve_radius;
        options.node_cap = solve_cap;
        options.memoize = !solve_no_memo;
        const auto result = nrow::solve(solve_n, options);
        if (const auto* v = std::get_if<nrow::SolverVerdict>(&result)) {
            std::cout << nrow::format_verdict(*v);
            std::cerr << "# " << v->exactness_note << '\n';
            return 0;
        }
        const auto& inc = std::get<nrow::SolverInconclusive>(result);
        std::cout << "n=" << inc.n << " inconclusive radius=" << inc.search_radius << " nodes=" << inc.nodes_expanded
                  << " horizon_refuted=" << inc.horizon_reached << " reason=\"" << inc.reason << "\"\n";
        return kExitInconclusive;
    }

    if (*serve) {
        std::optional<std::filesystem::path> dir;
        if (!serve_dir.empty())
            dir = serve_dir;
        nrow::GameService service(dir);
        if (dir)
            std::cerr << "recovered " << service.recover() << " session(s) from " << serve_dir << '\n';
        httplib::Server server;
        nrow::install_routes(server, service);
        if (!serve_static.empty() && !server.set_mount_point("/", serve_static)) {
            std::cerr << "cannot serve static files from " << serve_static << '\n';
            return 1;
        }
        std::cerr << "listening on " << serve_host << ':' << serve_port << '\n';
        return server.listen(serve_host, serve_port) ? 0 : 1;
    }

    if (*selftest) {
        bool ok = true;
        for (const auto& r : nrow::run_selftest(self_seed)) {
            std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
            ok = ok && r.passed;
        }
        return ok ? 0 : 1;
    }
    return kExitUsage;
}
