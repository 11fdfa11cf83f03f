// Strategies: the compass-response Breaker, the line-spoiling Breaker, and the Maker adversaries.
#pragma once

#include "nrow/board.hpp"
#include "nrow/line_cover.hpp"

#include <array>
#include <memory>
#include <string_view>
#include <vector>

namespace nrow {

enum class Direction8 : std::uint8_t { N, NE, E, SE, S, SW, W, NW };

Point step(Direction8 d) noexcept;
Direction8 opposite(Direction8 d) noexcept;
const char* to_string(Direction8 d) noexcept;

inline constexpr std::int64_t kCompassPeriod = 11;
inline constexpr std::int64_t kCompassRowShift = 3;

using CompassBase = std::array<Direction8, kCompassPeriod>;

/// Values of the compass map on (0,0)..(10,0).
inline constexpr CompassBase kCompassBase{Direction8::N,  Direction8::NE, Direction8::E, Direction8::SE,
                                          Direction8::S,  Direction8::SW, Direction8::W, Direction8::NW,
                                          Direction8::N,  Direction8::NE, Direction8::E};

/// base[(x - 3y) mod 11]: period 11 along rows, pattern shifted by 3 per row up.
Direction8 compass_of(Point p, const CompassBase& base = kCompassBase) noexcept;

/// splitmix64; identical seeds give identical streams everywhere.
struct SplitMix64
{
    std::uint64_t state = 0;

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// Value in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept { return next() % bound; }
};

/// Square spiral around the origin: (0,0),(1,0),(1,1),(0,1),(-1,1),(-1,0),(-1,-1),(0,-1),(1,-1),(2,-1),...
Point spiral_next(Point p) noexcept;

/// Position in the spiral below which every point is claimed. Claims are permanent, so it only advances.
class SpiralCursor
{
public:
    Point first_unclaimed(const GameState& state);

private:
    Point at_{0, 0};
};

/// First p + k*d, k >= 1, claimed neither on the board nor in `pending`.
Point next_available(const GameState& state, Point p, Direction8 d, const PointSet& pending);

/// First `count` unclaimed, non-pending points of the spiral.
std::vector<Point> arbitrary_fill(const GameState& state, std::int64_t count, const PointSet& pending);
std::vector<Point> arbitrary_fill(const GameState& state, std::int64_t count, const PointSet& pending,
                                  SpiralCursor& cursor);

/// For each point of the opponent's last move, in declared order, the next available point in its
/// compass direction; leftover quota is filled arbitrarily.
std::vector<Point> direction_breaker(const GameState& state, std::int64_t quota, SplitMix64& rng);

/// Spoils the good lines with most Red points (ties to textually least id) while quota covers the
/// targets. Marks spoiled lines in `ledger`, which must reflect every Red point of `state`.
std::vector<Point> line_spoil_breaker(const GameState& state, LineLedger& ledger, std::int64_t quota,
                                      SplitMix64& rng);
std::vector<Point> line_spoil_breaker(const GameState& state, LineLedger& ledger, std::int64_t quota,
                                      SplitMix64& rng, SpiralCursor& cursor);

/// n fresh consecutive points on a remote row once quota >= n, else spread-out remote points.
std::vector<Point> sprint_maker(const GameState& state, std::int64_t quota);

/// Quota successive picks maximising the own run length created, then fewest opponent points in the
/// best surrounding n-window, then least (x, y). Reference implementation; GreedyMaker is incremental.
std::vector<Point> greedy_maker(const GameState& state, std::int64_t quota, SplitMix64& rng);

/// Each pick uniform among the 50 lowest-index free points of the spiral.
std::vector<Point> random_maker(const GameState& state, std::int64_t quota, SplitMix64& rng);

inline constexpr std::int64_t kRandomMakerWindow = 50;

// ---------------------------------------------------------------------------

/// A player. Private state is derived from the public move history via observe().
class Strategy
{
public:
    explicit Strategy(PlayerColor side) : side_(side) {}
    virtual ~Strategy() = default;

    virtual std::string_view name() const noexcept = 0;
    PlayerColor side() const noexcept { return side_; }

    /// Catch up private state with `state`'s history. Idempotent.
    virtual void observe(const GameState&) {}
    /// Returns exactly `quota` distinct unclaimed points.
    virtual std::vector<Point> choose(const GameState& state, std::int64_t quota) = 0;
    /// Ledger kept by the strategy, if any.
    virtual const LineLedger* ledger() const noexcept { return nullptr; }

private:
    PlayerColor side_;
};

inline constexpr std::array<std::string_view, 6> kStrategyNames{"direction", "line_spoil", "sprint",
                                                                "greedy",    "random",     "fill"};

bool is_known_strategy(std::string_view name) noexcept;

/// Throws std::invalid_argument for unknown names and for line_spoil on the Red side.
std::unique_ptr<Strategy> make_strategy(std::string_view name, PlayerColor side, const GameConfig& config,
                                        std::uint64_t seed);

} // namespace nrow
