// The cover of Z^2 by straight lines of length 2n, overlapping with stride n,
// and the per-line Red-count ledger kept over it.
#pragma once

#include "nrow/board.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace nrow {

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept
{
    std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept
{
    return -floor_div(-a, b);
}

/// F_{i,j} (dir E), G_{i,j} (dir N), H_{i,j} (dir NE), I_{i,j} (dir SE).
/// Position p in [1, 2n] sits at parameter k = j*n + p - 1.
struct LineId
{
    LineDir4 dir = LineDir4::E;
    std::int64_t i = 0;
    std::int64_t j = 0;

    friend constexpr auto operator<=>(const LineId&, const LineId&) = default;
};

struct LineIdHash
{
    std::size_t operator()(const LineId& id) const noexcept
    {
        return PointHash{}(Point{id.i * 4 + static_cast<std::int64_t>(id.dir), id.j});
    }
};

/// `<F|G|H|I>:<i>:<j>`
std::string to_string(const LineId& id);
LineId parse_line_id(const std::string& text);

/// Line index i and parameter k of a point on the family lines with direction d.
struct LineCoord
{
    std::int64_t i = 0;
    std::int64_t k = 0;
};
LineCoord line_coord(Point p, LineDir4 d) noexcept;
Point point_at(LineDir4 d, std::int64_t i, std::int64_t k) noexcept;

std::vector<Point> line_points(const LineId& id, std::int64_t n);

/// Point at 1-based position `pos` of the line.
Point line_point(const LineId& id, std::int64_t n, std::int64_t pos) noexcept;

/// 1-based position of p on the line, if p lies on it.
std::optional<std::int64_t> position_on(const LineId& id, std::int64_t n, Point p) noexcept;

/// The 8 family members through p, two per direction, ordered (dir, j).
std::array<LineId, 8> lines_through(Point p, std::int64_t n);

/// A family line containing every point of a length-n segment; the smaller j when two qualify.
LineId containing_line(const Segment& seg, std::int64_t n);

class PreconditionViolated : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Positions x (last non-Red in [1,n]) and y (first non-Red in [n+1,2n]).
struct SpoilPositions
{
    std::int64_t x = 0;
    std::int64_t y = 0;
};

/// `color_at(Point) -> std::optional<PlayerColor>`. Throws PreconditionViolated when a half is
/// entirely Red or the line already holds an all-Red length-n window.
template <class ColorAt>
SpoilPositions spoil_positions(const LineId& id, std::int64_t n, ColorAt&& color_at)
{
    auto red = [&](std::int64_t pos) { return color_at(line_point(id, n, pos)) == PlayerColor::Red; };
    SpoilPositions out{0, 0};
    for (std::int64_t pos = n; pos >= 1; --pos)
        if (!red(pos)) {
            out.x = pos;
            break;
        }
    for (std::int64_t pos = n + 1; pos <= 2 * n; ++pos)
        if (!red(pos)) {
            out.y = pos;
            break;
        }
    if (out.x == 0 || out.y == 0)
        throw PreconditionViolated("line " + to_string(id) + " has an all-Red half");
    if (out.y - out.x > n)
        throw PreconditionViolated("line " + to_string(id) + " already holds an all-Red window");
    return out;
}

/// The unclaimed points among x and y; Blue there blocks every length-n window of the line.
template <class ColorAt>
std::vector<Point> spoil_targets(const LineId& id, std::int64_t n, ColorAt&& color_at)
{
    const auto pos = spoil_positions(id, n, color_at);
    std::vector<Point> out;
    for (std::int64_t p : {pos.x, pos.y}) {
        const Point q = line_point(id, n, p);
        if (!color_at(q).has_value())
            out.push_back(q);
    }
    return out;
}

std::vector<Point> spoil_targets(const LineId& id, const GameState& state);

/// Sparse, monotone per-line records for the cover: Red counts and spoiled flags.
class LineLedger
{
public:
    struct Record
    {
        std::int64_t red_count = 0;
        bool spoiled = false;
        friend bool operator==(const Record&, const Record&) = default;
    };

    /// Without ranking the ledger keeps counts only, and best_good_line() is unavailable.
    explicit LineLedger(std::int64_t n, bool rank_lines = true);

    std::int64_t n() const noexcept { return n_; }

    /// Red claims bump the 8 lines through p; Blue claims are ignored.
    void on_claim(Point p, PlayerColor color);
    void mark_spoiled(const LineId& id);

    const Record* find(const LineId& id) const;
    bool is_spoiled(const LineId& id) const;

    /// |{good lines with red_count >= r}|, r >= 1.
    std::int64_t count_good_with_red_at_least(std::int64_t r) const;
    /// Largest red_count over good lines, 0 when none.
    std::int64_t max_good_red() const;
    /// Good line with the most Red points, ties to the textually least id. Requires ranking.
    std::optional<LineId> best_good_line() const;

    const std::unordered_map<LineId, Record, LineIdHash>& records() const noexcept { return records_; }

private:
    struct RankOrder
    {
        bool operator()(const std::pair<std::int64_t, std::string>& a,
                        const std::pair<std::int64_t, std::string>& b) const
        {
            if (a.first != b.first)
                return a.first > b.first;
            return a.second < b.second;
        }
    };

    void histogram_add(std::int64_t count, std::int64_t delta);

    std::int64_t n_;
    bool rank_lines_;
    std::unordered_map<LineId, Record, LineIdHash> records_;
    std::set<std::pair<std::int64_t, std::string>, RankOrder> ranked_;  // good lines, red_count > 0
    std::vector<std::int64_t> histogram_;                             // good lines by red_count
};

inline void ledger_on_claim(LineLedger& ledger, Point p, PlayerColor color)
{
    ledger.on_claim(p, color);
}

inline std::int64_t count_lines_with_red_at_least(const LineLedger& ledger, std::int64_t r)
{
    return ledger.count_good_with_red_at_least(r);
}

} // namespace nrow
