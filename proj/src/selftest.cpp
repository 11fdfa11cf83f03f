#include "nrow/selftest.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nrow {

namespace {

std::int64_t uniform(SplitMix64& rng, std::int64_t lo, std::int64_t hi)
{
    return lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

CheckResult fail(std::string name, std::string detail)
{
    return {std::move(name), false, std::move(detail)};
}

// Values on (0,0)..(10,0), written out independently of kCompassBase.
constexpr Direction8 kListedRow[11] = {Direction8::N,  Direction8::NE, Direction8::E, Direction8::SE,
                                       Direction8::S,  Direction8::SW, Direction8::W, Direction8::NW,
                                       Direction8::N,  Direction8::NE, Direction8::E};

Direction8 compass_by_recurrence(Point p)
{
    // f(x, y) = f(x - 3, y - 1) walks any row down (or up) to y = 0, then f(x, 0) = f(x +- 11, 0).
    std::int64_t x = p.x, y = p.y;
    while (y > 0) {
        x -= 3;
        --y;
    }
    while (y < 0) {
        x += 3;
        ++y;
    }
    while (x < 0)
        x += 11;
    while (x > 10)
        x -= 11;
    return kListedRow[x];
}

} // namespace

CheckResult check_compass_windows(const CompassBase& base)
{
    const std::string name = "compass windows";
    for (auto d : kLineDirs) {
        for (std::int64_t x0 = 0; x0 < kCompassPeriod; ++x0) {
            for (std::int64_t y0 = 0; y0 < kCompassPeriod; ++y0) {
                std::array<int, 8> count{};
                for (std::int64_t k = 0; k < kCompassPeriod; ++k)
                    ++count[static_cast<std::size_t>(compass_of(Point{x0, y0} + k * step(d), base))];
                for (int v = 0; v < 8; ++v) {
                    const int want = v <= static_cast<int>(Direction8::E) ? 2 : 1;
                    if (count[static_cast<std::size_t>(v)] < 1 || count[static_cast<std::size_t>(v)] > 2 ||
                        count[static_cast<std::size_t>(v)] != want)
                        return fail(name, std::string("dir ") + to_string(d) + " start (" + std::to_string(x0) + "," +
                                              std::to_string(y0) + "): value " +
                                              to_string(static_cast<Direction8>(v)) + " appears " +
                                              std::to_string(count[static_cast<std::size_t>(v)]) + " times");
                }
            }
        }
    }
    return {name, true, "4 directions x 121 window starts"};
}

CheckResult check_compass_recurrence(const CompassBase& base, std::int64_t extent)
{
    const std::string name = "compass closed form vs recurrence";
    std::int64_t checked = 0;
    for (std::int64_t x = -extent; x <= extent; ++x)
        for (std::int64_t y = -extent; y <= extent; ++y, ++checked)
            if (compass_of({x, y}, base) != compass_by_recurrence({x, y}))
                return fail(name, "mismatch at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    return {name, true, std::to_string(checked) + " points"};
}

CheckResult check_cover_degree(std::int64_t samples, std::uint64_t seed, const LinesThroughFn& fn)
{
    const std::string name = "cover degree";
    const LinesThroughFn through = fn ? fn : [](Point p, std::int64_t n) {
        auto a = lines_through(p, n);
        return std::vector<LineId>(a.begin(), a.end());
    };
    SplitMix64 rng{seed};
    for (std::int64_t s = 0; s < samples; ++s) {
        const std::int64_t n = uniform(rng, 1, 64);
        const Point p{uniform(rng, -1'000'000, 1'000'000), uniform(rng, -1'000'000, 1'000'000)};
        const auto ids = through(p, n);
        const std::set<LineId> distinct(ids.begin(), ids.end());
        if (ids.size() != 8 || distinct.size() != 8)
            return fail(name, "point " + to_string(p) + " n=" + std::to_string(n) + " lies on " +
                                  std::to_string(distinct.size()) + " distinct lines");
        for (const LineId& id : ids) {
            const auto pts = line_points(id, n);
            if (std::find(pts.begin(), pts.end(), p) == pts.end())
                return fail(name, to_string(id) + " does not contain " + to_string(p));
        }
        // Every family line within two strides of p: it contains p iff it was reported.
        for (auto d : kLineDirs) {
            const auto c = line_coord(p, d);
            const std::int64_t j0 = floor_div(c.k, n);
            for (std::int64_t j = j0 - 3; j <= j0 + 3; ++j) {
                const LineId id{d, c.i, j};
                const auto pts = line_points(id, n);
                const bool member = std::find(pts.begin(), pts.end(), p) != pts.end();
                if (member != (distinct.count(id) != 0))
                    return fail(name, "membership of " + to_string(p) + " in " + to_string(id) + " misreported");
            }
        }
    }
    return {name, true, std::to_string(samples) + " random points"};
}

CheckResult check_cover_containment(std::int64_t samples_per_n, std::uint64_t seed, const std::vector<std::int64_t>& ns)
{
    const std::string name = "cover containment";
    SplitMix64 rng{seed};
    auto holds = [](const LineId& id, std::int64_t n, const Segment& seg) {
        for (std::int64_t k = 0; k < seg.len; ++k)
            if (!position_on(id, n, seg.at(k)))
                return false;
        return true;
    };
    for (auto n : ns) {
        for (std::int64_t s = 0; s < samples_per_n; ++s) {
            const Segment seg{{uniform(rng, -100'000, 100'000), uniform(rng, -100'000, 100'000)},
                              kLineDirs[rng.below(4)], n};
            const LineId id = containing_line(seg, n);
            const auto pts = line_points(id, n);
            const std::set<Point> members(pts.begin(), pts.end());
            for (const Point& p : seg.points())
                if (!members.count(p))
                    return fail(name, to_string(id) + " misses " + to_string(p) + " of " + to_string(seg));
            LineId lower = id;
            --lower.j;
            if (holds(lower, n, seg))
                return fail(name, "smaller witness " + to_string(lower) + " exists for " + to_string(seg));
        }
    }
    return {name, true, std::to_string(samples_per_n) + " segments per n"};
}

CheckResult check_spoil(std::int64_t samples, std::uint64_t seed)
{
    const std::string name = "spoil correctness";
    SplitMix64 rng{seed};
    std::int64_t done = 0;
    while (done < samples) {
        const std::int64_t n = uniform(rng, 1, 24);
        const LineId id{kLineDirs[rng.below(4)], uniform(rng, -50, 50), uniform(rng, -50, 50)};
        const auto pts = line_points(id, n);
        std::map<Point, PlayerColor> colors;
        const auto red_pct = uniform(rng, 20, 90);
        for (const Point& p : pts) {
            const auto roll = uniform(rng, 1, 100);
            if (roll <= red_pct)
                colors[p] = PlayerColor::Red;
            else if (roll <= red_pct + 8)
                colors[p] = PlayerColor::Blue;
        }
        auto color_at = [&](Point p) -> std::optional<PlayerColor> {
            auto it = colors.find(p);
            if (it == colors.end())
                return std::nullopt;
            return it->second;
        };
        // Precondition: no all-Red window yet.
        bool red_window = false;
        for (std::int64_t s = 0; s + n <= 2 * n && !red_window; ++s) {
            bool all = true;
            for (std::int64_t i = 0; i < n && all; ++i)
                all = color_at(pts[static_cast<std::size_t>(s + i)]) == PlayerColor::Red;
            red_window = all;
        }
        if (red_window)
            continue;
        ++done;
        const auto targets = spoil_targets(id, n, color_at);
        for (const Point& t : targets) {
            if (colors.count(t))
                return fail(name, "target " + to_string(t) + " already claimed");
            colors[t] = PlayerColor::Blue;
        }
        for (std::int64_t s = 0; s + n <= 2 * n; ++s) {
            bool blocked = false;
            for (std::int64_t i = 0; i < n && !blocked; ++i)
                blocked = color_at(pts[static_cast<std::size_t>(s + i)]) == PlayerColor::Blue;
            if (!blocked)
                return fail(name, "window at position " + std::to_string(s + 1) + " of " + to_string(id) +
                                      " (n=" + std::to_string(n) + ") has no Blue point");
        }
    }
    return {name, true, std::to_string(samples) + " colorings"};
}

CheckResult check_win_oracle(std::int64_t games, std::uint64_t seed)
{
    const std::string name = "win detection vs brute force";
    SplitMix64 rng{seed};
    const Schedule schedules[] = {Schedule::identity(), Schedule::constant(1), Schedule::constant(2),
                                  Schedule::constant(3)};
    std::int64_t compared = 0;
    for (std::int64_t g = 0; g < games; ++g) {
        GameConfig config;
        config.n = uniform(rng, 1, 6);
        config.schedule = schedules[rng.below(4)];
        config.mode = rng.below(2) ? GameMode::TwoWinner : GameMode::MakerBreaker;
        GameState state(config);
        const std::int64_t box = config.n + 2;
        for (int turn = 0; turn < 14 && !state.over(); ++turn) {
            const std::int64_t q = state.quota_now();
            if (state.claimed_count() + static_cast<std::size_t>(q) > static_cast<std::size_t>((2 * box + 1) * (2 * box + 1)))
                break;
            PointSet chosen;
            std::vector<Point> move;
            while (static_cast<std::int64_t>(move.size()) < q) {
                const Point p{uniform(rng, -box, box), uniform(rng, -box, box)};
                if (!state.is_claimed(p) && chosen.insert(p).second)
                    move.push_back(p);
            }
            state.apply(move);
            for (auto c : {PlayerColor::Red, PlayerColor::Blue}) {
                ++compared;
                const auto fast = state.has_win(c);
                const auto slow = brute_force_win_scan(state, c);
                if (fast != slow)
                    return fail(name, "game " + std::to_string(g) + " turn " + std::to_string(state.turn() - 1) +
                                          ": incremental " + (fast ? to_string(*fast) : "none") + " vs scan " +
                                          (slow ? to_string(*slow) : "none"));
            }
        }
    }
    return {name, true, std::to_string(games) + " games, " + std::to_string(compared) + " comparisons"};
}

std::vector<CheckResult> run_selftest(std::uint64_t seed)
{
    return {check_compass_windows(), check_compass_recurrence(), check_cover_degree(10'000, seed),
            check_cover_containment(10'000, seed + 1), check_spoil(10'000, seed + 2),
            check_win_oracle(1'000, seed + 3)};
}

} // namespace nrow
