// Board representation, turn schedules and n-in-a-row win detection on Z^2.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace nrow {

struct Point
{
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr auto operator<=>(const Point&, const Point&) = default;
    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(std::int64_t k, Point a) { return {k * a.x, k * a.y}; }
};

struct PointHash
{
    std::size_t operator()(const Point& p) const noexcept
    {
        std::uint64_t z = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ull ^
                          (static_cast<std::uint64_t>(p.y) + 0x632BE59BD9B4E019ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return static_cast<std::size_t>(z ^ (z >> 31));
    }
};

using PointSet = std::unordered_set<Point, PointHash>;

enum class PlayerColor : std::uint8_t { Red, Blue };

constexpr PlayerColor opponent(PlayerColor c) noexcept
{
    return c == PlayerColor::Red ? PlayerColor::Blue : PlayerColor::Red;
}

/// The four winning-line directions. Declaration order is the tie-break order.
enum class LineDir4 : std::uint8_t { E = 0, N = 1, NE = 2, SE = 3 };

inline constexpr std::array<LineDir4, 4> kLineDirs{LineDir4::E, LineDir4::N, LineDir4::NE, LineDir4::SE};

constexpr Point step(LineDir4 d) noexcept
{
    switch (d) {
    case LineDir4::E: return {1, 0};
    case LineDir4::N: return {0, 1};
    case LineDir4::NE: return {1, 1};
    case LineDir4::SE: return {1, -1};
    }
    return {0, 0};
}

const char* to_string(LineDir4 d) noexcept;

/// Per-parity affine quota rule: quota(2t) = evenA*t + evenB, quota(2t+1) = oddA*t + oddC.
struct Schedule
{
    std::int64_t evenA = 2;
    std::int64_t evenB = 0;
    std::int64_t oddA = 2;
    std::int64_t oddC = 1;

    static constexpr Schedule identity() noexcept { return {2, 0, 2, 1}; }
    static constexpr Schedule constant(std::int64_t k) noexcept { return {0, k, 0, k}; }

    /// Throws std::invalid_argument for negative coefficients or a Maker that never moves.
    void validate() const;

    friend constexpr bool operator==(const Schedule&, const Schedule&) = default;
};

std::int64_t quota(const Schedule& schedule, std::int64_t t);
/// Points Red has claimed after all odd turns s <= t.
std::int64_t cumulative_maker_quota(const Schedule& schedule, std::int64_t t);

/// "identity", "const:k" or "a,b,c,d".
Schedule parse_schedule(const std::string& text);
std::string to_string(const Schedule& s);

enum class GameMode : std::uint8_t { MakerBreaker, TwoWinner };

struct GameConfig
{
    std::int64_t n = 5;
    Schedule schedule = Schedule::identity();
    GameMode mode = GameMode::MakerBreaker;

    void validate() const;
    friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

struct Move
{
    std::int64_t turn = 0;
    PlayerColor player = PlayerColor::Red;
    std::vector<Point> points;

    friend bool operator==(const Move&, const Move&) = default;
};

constexpr PlayerColor mover_at(std::int64_t t) noexcept
{
    return t % 2 == 1 ? PlayerColor::Red : PlayerColor::Blue;
}

struct Segment
{
    Point start;
    LineDir4 dir = LineDir4::E;
    std::int64_t len = 1;

    Point at(std::int64_t k) const noexcept { return start + k * step(dir); }
    std::vector<Point> points() const;

    friend constexpr auto operator<=>(const Segment&, const Segment&) = default;
};

struct Win
{
    PlayerColor color = PlayerColor::Red;
    std::int64_t turn = 0;
    Segment segment;

    friend bool operator==(const Win&, const Win&) = default;
};

/// Sparse claimed-cell map that keeps, per direction, the length of the maximal
/// monochromatic run at both endpoints of every run. Interior entries go stale.
class RunIndex
{
public:
    struct Cell
    {
        PlayerColor color = PlayerColor::Red;
        std::array<std::int64_t, 4> run{};
    };

    /// Result of a claim: the merged maximal run per direction.
    struct Merge
    {
        std::array<std::int64_t, 4> before{};  ///< run length on the negative side
        std::array<std::int64_t, 4> after{};   ///< run length on the positive side
        std::int64_t length(LineDir4 d) const noexcept
        {
            auto i = static_cast<std::size_t>(d);
            return 1 + before[i] + after[i];
        }
    };

    /// Precondition: p unclaimed.
    Merge claim(Point p, PlayerColor color);

    const Cell* find(Point p) const noexcept;
    bool contains(Point p) const noexcept { return cells_.count(p) != 0; }
    std::optional<PlayerColor> color_at(Point p) const noexcept;

    /// Length of the color run ending at p when walking in direction -d (0 if p is not that color).
    /// Exact only when p is a run endpoint on that side, which holds for neighbours of unclaimed points.
    std::int64_t run_from_end(Point p, PlayerColor color, LineDir4 d) const noexcept;

    /// Stored run length at a claimed point (exact for the most recently claimed point).
    std::int64_t stored_run(Point p, LineDir4 d) const noexcept;

    std::size_t size() const noexcept { return cells_.size(); }
    const std::unordered_map<Point, Cell, PointHash>& cells() const noexcept { return cells_; }

private:
    std::unordered_map<Point, Cell, PointHash> cells_;
};

enum class MoveErrorCode : std::uint8_t { Occupied, WrongCount, Duplicate, GameOver };

const char* to_string(MoveErrorCode c) noexcept;

class MoveError : public std::runtime_error
{
public:
    MoveError(MoveErrorCode code, std::string what, std::optional<Point> point = std::nullopt);
    MoveErrorCode code() const noexcept { return code_; }
    const std::optional<Point>& point() const noexcept { return point_; }

private:
    MoveErrorCode code_;
    std::optional<Point> point_;
};

struct Bounds
{
    std::int64_t min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool empty = true;
};

class GameState
{
public:
    explicit GameState(GameConfig config);

    const GameConfig& config() const noexcept { return config_; }
    std::int64_t n() const noexcept { return config_.n; }
    std::int64_t turn() const noexcept { return turn_; }
    PlayerColor to_move() const noexcept { return mover_at(turn_); }
    std::int64_t quota_now() const { return quota(config_.schedule, turn_); }
    const std::vector<Move>& history() const noexcept { return history_; }
    const std::optional<Win>& winner() const noexcept { return winner_; }
    bool over() const noexcept { return winner_.has_value(); }

    std::optional<PlayerColor> color_at(Point p) const noexcept { return board_.color_at(p); }
    bool is_claimed(Point p) const noexcept { return board_.contains(p); }
    std::size_t claimed_count() const noexcept { return board_.size(); }
    const RunIndex& board() const noexcept { return board_; }
    const Bounds& bounds() const noexcept { return bounds_; }

    /// Validates and applies the next move in place. Strong guarantee: on MoveError nothing changes.
    void apply(std::span<const Point> points);

    /// Lexicographically least all-`color` window of length n, if any.
    std::optional<Segment> has_win(PlayerColor color) const;

private:
    void validate(std::span<const Point> points) const;

    GameConfig config_;
    std::int64_t turn_ = 1;
    std::vector<Move> history_;
    RunIndex board_;
    // Maximal runs of length >= n, per color, ordered by (start, dir, len).
    std::array<std::set<Segment>, 2> long_runs_;
    std::optional<Win> winner_;
    Bounds bounds_;
};

GameState apply_move(GameState state, std::span<const Point> points);

std::optional<Segment> has_win(const GameState& state, PlayerColor color);

/// Exhaustive scan over all length-n windows through claimed points.
std::optional<Segment> brute_force_win_scan(const GameState& state, PlayerColor color);

/// Line-oriented transcript: header `n=.. schedule=a,b,c,d mode=MB|TW`, then `t=<t> x,y ...` per turn.
/// `t=<t> x,y ...` without a trailing newline.
std::string format_move_line(const Move& move);
std::string write_transcript(const GameConfig& config, std::span<const Move> moves);
struct Transcript
{
    GameConfig config;
    std::vector<Move> moves;
};
/// Throws std::invalid_argument on malformed input.
Transcript parse_transcript(const std::string& text);
/// Replays a transcript through apply(); throws MoveError on illegal moves.
GameState replay(const Transcript& transcript);

std::string to_string(const Point& p);
std::string to_string(const Segment& s);

} // namespace nrow
