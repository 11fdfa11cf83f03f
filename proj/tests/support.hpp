// Independent oracles and random game drivers shared by the test binaries.
#pragma once

#include "nrow/board.hpp"
#include "nrow/strategies.hpp"

#include <map>
#include <optional>
#include <vector>

namespace testing {

using nrow::GameState;
using nrow::PlayerColor;
using nrow::Point;

/// Plain map copy of the board, rebuilt from the move history.
inline std::map<Point, PlayerColor> board_map(const GameState& s)
{
    std::map<Point, PlayerColor> out;
    for (const auto& m : s.history())
        for (const Point& p : m.points)
            out[p] = m.player;
    return out;
}

/// Length of the maximal `color` run through p along step (dx, dy), by walking both rays.
inline std::int64_t ray_run(const std::map<Point, PlayerColor>& b, Point p, Point d, PlayerColor color)
{
    auto is = [&](Point q) {
        auto it = b.find(q);
        return it != b.end() && it->second == color;
    };
    if (!is(p))
        return 0;
    std::int64_t len = 1;
    for (Point q = p + d; is(q); q = q + d)
        ++len;
    for (Point q = p - d; is(q); q = q - d)
        ++len;
    return len;
}

/// True iff some all-`color` window of length n exists, checked by walking rays from every point.
inline bool naive_has_win(const GameState& s, PlayerColor color)
{
    const auto b = board_map(s);
    for (const auto& [p, c] : b)
        if (c == color)
            for (auto d : nrow::kLineDirs)
                if (ray_run(b, p, nrow::step(d), color) >= s.n())
                    return true;
    return false;
}

/// Random legal move: points drawn from a box around the origin that grows with the board.
inline std::vector<Point> random_move(const GameState& s, std::int64_t quota, nrow::SplitMix64& rng,
                                      std::int64_t half_width)
{
    std::vector<Point> out;
    nrow::PointSet taken;
    while (static_cast<std::int64_t>(out.size()) < quota) {
        const auto w = static_cast<std::uint64_t>(2 * half_width + 1);
        Point p{static_cast<std::int64_t>(rng.below(w)) - half_width, static_cast<std::int64_t>(rng.below(w)) - half_width};
        if (s.is_claimed(p) || taken.count(p))
            continue;
        taken.insert(p);
        out.push_back(p);
    }
    return out;
}

inline std::int64_t box_for(const GameState& s, std::int64_t quota)
{
    std::int64_t h = 2;
    while ((2 * h + 1) * (2 * h + 1) < 2 * (static_cast<std::int64_t>(s.claimed_count()) + quota))
        ++h;
    return h;
}

} // namespace testing
