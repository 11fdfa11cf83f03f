// Acceptance gate: one PASS/FAIL line per criterion. Sizes, seeds, caps and time limits are fixed here.

#include "nrow/engine.hpp"
#include "nrow/selftest.hpp"
#include "nrow/solver.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace nrow;
using Clock = std::chrono::steady_clock;

struct Outcome
{
    bool passed = false;
    std::string detail;
};

int failures = 0;

// Maker wins seen anywhere in the run, for the counting check.
struct WinSeen
{
    GameConfig config;
    std::int64_t t;
};
std::vector<WinSeen> wins_seen;

void record(const GameRecord& rec)
{
    if (rec.win_time && rec.winner == PlayerColor::Red)
        wins_seen.push_back({rec.config, *rec.win_time});
}

void criterion(const std::string& name, double limit_s, const std::function<Outcome()>& body)
{
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < limit_s;
    const bool ok = o.passed && in_time;
    if (!ok)
        ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, limit_s);
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << timing
              << (in_time ? "" : ", over time limit") << "]" << std::endl;
}

Outcome from(const CheckResult& r)
{
    return {r.passed, r.detail};
}

SweepRow row_of(const GameRecord& rec, double wall_ms)
{
    SweepRow row;
    row.n = rec.config.n;
    row.schedule = rec.config.schedule;
    row.maker = rec.maker;
    row.breaker = rec.breaker;
    row.seed = rec.seed;
    row.win_time = rec.win_time;
    row.truncated_at = rec.truncated_at;
    row.max_l = rec.max_l();
    row.wall_ms = wall_ms;
    return row;
}

constexpr std::uint64_t kSeed = 20240601;

} // namespace

int main()
{
    criterion("compass windows", 1, [] { return from(check_compass_windows()); });

    criterion("compass closed form vs recurrence", 1, [] { return from(check_compass_recurrence(kCompassBase, 100)); });

    criterion("cover degree and containment", 5, [] {
        const auto degree = check_cover_degree(10'000, kSeed);
        const auto contain = check_cover_containment(10'000, kSeed + 1, {4, 10, 57});
        return Outcome{degree.passed && contain.passed, degree.detail + "; " + contain.detail};
    });

    criterion("spoil correctness", 5, [] { return from(check_spoil(10'000, kSeed + 2)); });

    criterion("win detection oracle", 10, [] { return from(check_win_oracle(1'000, kSeed + 3)); });

    criterion("direction breaker lower bound, n in {55,110,220}", 120, [] {
        SweepSpec spec;
        spec.ns = {55, 110, 220};
        spec.matchups = {{"sprint", "direction"}, {"greedy", "direction"}, {"random", "direction"}};
        spec.seeds = 20;
        spec.seed_base = 1;
        const auto rows = run_sweep(spec, 0);
        bool ok = true;
        std::ostringstream detail;
        for (std::int64_t n : spec.ns) {
            const std::int64_t bound = (2 * n + 10) / 11 - 6;
            for (const auto& m : spec.matchups) {
                std::int64_t fastest = -1, games_won = 0;
                for (const auto& r : rows) {
                    if (r.n != n || r.maker != m.maker)
                        continue;
                    if (!r.error.empty()) {
                        ok = false;
                        detail << " error(" << r.error << ")";
                        continue;
                    }
                    if (!r.win_time)
                        continue;
                    ++games_won;
                    wins_seen.push_back({GameConfig{n, spec.schedule, spec.mode}, *r.win_time});
                    if (fastest < 0 || *r.win_time < fastest)
                        fastest = *r.win_time;
                    if (*r.win_time < bound)
                        ok = false;
                }
                detail << " n=" << n << " " << m.maker << ": won " << games_won << "/20, fastest "
                       << (fastest < 0 ? std::string("-") : std::to_string(fastest)) << " >= " << bound << ";";
            }
        }
        return Outcome{ok, detail.str()};
    });

    criterion("line_spoil floor at n=1000", 300, [] {
        const std::int64_t n = 1000;
        const std::int64_t cap = 2 * n;
        const GameConfig config{n, Schedule::identity(), GameMode::MakerBreaker};
        std::vector<SweepRow> rows;
        bool ok = true;
        std::int64_t worst_l = 0, earliest = -1;
        for (const char* maker : {"greedy", "random"})
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                const auto start = Clock::now();
                const auto rec = play_game(config, maker, "line_spoil", seed, cap);
                rows.push_back(row_of(rec, std::chrono::duration<double, std::milli>(Clock::now() - start).count()));
                record(rec);
                if (rec.win_time && (earliest < 0 || *rec.win_time < earliest))
                    earliest = *rec.win_time;
                if (rec.win_time && *rec.win_time < 10)
                    ok = false;
                for (const auto& e : rec.timeline)
                    if (e.t <= 10) {
                        worst_l = std::max(worst_l, e.l_t);
                        if (e.l_t > 160)
                            ok = false;
                    }
            }
        std::cout << format_sweep_csv(rows, true);
        std::ostringstream detail;
        detail << "max L_t over t<=10 is " << worst_l << " (limit 160), earliest win "
               << (earliest < 0 ? std::string("none") : std::to_string(earliest)) << " (must be >= 10), cap " << cap;
        return Outcome{ok, detail.str()};
    });

    criterion("(n,k) game with k=2, n=41", 60, [] {
        const GameConfig config{41, Schedule::constant(2), GameMode::MakerBreaker};
        bool ok = true;
        std::ostringstream detail;
        for (const char* maker : {"sprint", "greedy", "random"})
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                const auto rec = play_game(config, maker, "direction", seed, 1000);
                record(rec);
                if (rec.win_time) {
                    ok = false;
                    detail << maker << "/" << seed << " won at " << *rec.win_time << "; ";
                }
            }
        detail << "9 games of 1000 turns, Maker wins: " << (ok ? "none" : "see above");
        return Outcome{ok, detail.str()};
    });

    criterion("counting invariant", 10, [] {
        bool ok = true;
        std::ostringstream detail;
        for (std::int64_t n = 1; n <= 30; ++n) {
            std::int64_t expected = 1;
            while (quota(Schedule::identity(), expected) < n)
                expected += 2;
            const auto rec = play_game(GameConfig{n, Schedule::identity(), GameMode::MakerBreaker}, "sprint", "fill", 1,
                                       4 * n + 4);
            record(rec);
            if (rec.win_time != expected) {
                ok = false;
                detail << "n=" << n << " sprint won at " << (rec.win_time ? std::to_string(*rec.win_time) : "none")
                       << " not " << expected << "; ";
            }
        }
        // More wins under other schedules.
        for (const Schedule& sch : {Schedule::constant(1), Schedule::constant(3), Schedule{1, 0, 3, 1}})
            for (std::int64_t n = 2; n <= 8; ++n)
                for (const char* maker : {"greedy", "random", "sprint"})
                    for (const char* breaker : {"fill", "direction"})
                        record(play_game(GameConfig{n, sch, GameMode::MakerBreaker}, maker, breaker, 7, 60));
        std::size_t bad = 0;
        for (const auto& w : wins_seen)
            if (cumulative_maker_quota(w.config.schedule, w.t) < w.config.n)
                ++bad;
        if (bad)
            ok = false;
        detail << "sprint exact for n=1..30; " << wins_seen.size() << " recorded Maker wins, " << bad
               << " below the cumulative quota";
        return Outcome{ok, detail.str()};
    });

    criterion("solver n=1..3", 10, [] {
        struct Expect
        {
            std::int64_t n;
            Seat winner;
            std::int64_t turn;
        };
        bool ok = true;
        std::ostringstream detail;
        for (const Expect& e : {Expect{1, Seat::First, 1}, Expect{2, Seat::Second, 2}, Expect{3, Seat::First, 3}}) {
            const auto result = solve(e.n);
            const auto* v = std::get_if<SolverVerdict>(&result);
            if (!v) {
                ok = false;
                detail << "n=" << e.n << " inconclusive; ";
                continue;
            }
            const bool good = v->winner == e.winner && v->win_turn == e.turn && verify_variation(*v);
            ok = ok && good;
            detail << "n=" << e.n << " " << to_string(v->winner) << "/" << v->win_turn
                   << (good ? "" : " (mismatch)") << "; ";
        }
        return Outcome{ok, detail.str()};
    });

    criterion("solver n=4 at radius 4", 600, [] {
        SolverOptions opt;
        opt.radius = 4;
        const auto result = solve(4, opt);
        const auto* v = std::get_if<SolverVerdict>(&result);
        if (!v)
            return Outcome{false, "inconclusive: " + std::get<SolverInconclusive>(result).reason};
        const bool ok = v->winner == Seat::First && v->win_turn == 3 && verify_variation(*v);
        return Outcome{ok, std::string(to_string(v->winner)) + "/" + std::to_string(v->win_turn) + ", " +
                               std::to_string(v->nodes_expanded) + " nodes, variation " +
                               (verify_variation(*v) ? "verified" : "rejected")};
    });

    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
