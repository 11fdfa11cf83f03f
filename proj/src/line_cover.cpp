#include "nrow/line_cover.hpp"

#include <charconv>

namespace nrow {

namespace {

constexpr char family_letter(LineDir4 d) noexcept
{
    switch (d) {
    case LineDir4::E: return 'F';
    case LineDir4::N: return 'G';
    case LineDir4::NE: return 'H';
    case LineDir4::SE: return 'I';
    }
    return '?';
}

} // namespace

std::string to_string(const LineId& id)
{
    std::string out(1, family_letter(id.dir));
    out += ':';
    out += std::to_string(id.i);
    out += ':';
    out += std::to_string(id.j);
    return out;
}

LineId parse_line_id(const std::string& text)
{
    LineId id;
    if (text.size() < 5 || text[1] != ':')
        throw std::invalid_argument("bad line id: '" + text + "'");
    switch (text[0]) {
    case 'F': id.dir = LineDir4::E; break;
    case 'G': id.dir = LineDir4::N; break;
    case 'H': id.dir = LineDir4::NE; break;
    case 'I': id.dir = LineDir4::SE; break;
    default: throw std::invalid_argument("bad line family in: '" + text + "'");
    }
    const char* first = text.data() + 2;
    const char* last = text.data() + text.size();
    auto r1 = std::from_chars(first, last, id.i);
    if (r1.ec != std::errc{} || r1.ptr == last || *r1.ptr != ':')
        throw std::invalid_argument("bad line id: '" + text + "'");
    auto r2 = std::from_chars(r1.ptr + 1, last, id.j);
    if (r2.ec != std::errc{} || r2.ptr != last)
        throw std::invalid_argument("bad line id: '" + text + "'");
    return id;
}

LineCoord line_coord(Point p, LineDir4 d) noexcept
{
    switch (d) {
    case LineDir4::E: return {p.y, p.x};
    case LineDir4::N: return {p.x, p.y};
    case LineDir4::NE: return {p.x - p.y, p.y};
    case LineDir4::SE: return {p.x + p.y, -p.y};
    }
    return {};
}

Point point_at(LineDir4 d, std::int64_t i, std::int64_t k) noexcept
{
    switch (d) {
    case LineDir4::E: return {k, i};
    case LineDir4::N: return {i, k};
    case LineDir4::NE: return {i + k, k};
    case LineDir4::SE: return {i + k, -k};
    }
    return {};
}

Point line_point(const LineId& id, std::int64_t n, std::int64_t pos) noexcept
{
    return point_at(id.dir, id.i, id.j * n + pos - 1);
}

std::vector<Point> line_points(const LineId& id, std::int64_t n)
{
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(2 * n));
    for (std::int64_t pos = 1; pos <= 2 * n; ++pos)
        out.push_back(line_point(id, n, pos));
    return out;
}

std::optional<std::int64_t> position_on(const LineId& id, std::int64_t n, Point p) noexcept
{
    const auto c = line_coord(p, id.dir);
    if (c.i != id.i)
        return std::nullopt;
    const std::int64_t pos = c.k - id.j * n + 1;
    if (pos < 1 || pos > 2 * n)
        return std::nullopt;
    return pos;
}

std::array<LineId, 8> lines_through(Point p, std::int64_t n)
{
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    std::array<LineId, 8> out;
    std::size_t at = 0;
    for (auto d : kLineDirs) {
        const auto c = line_coord(p, d);
        const std::int64_t j = floor_div(c.k, n);
        out[at++] = LineId{d, c.i, j - 1};
        out[at++] = LineId{d, c.i, j};
    }
    return out;
}

LineId containing_line(const Segment& seg, std::int64_t n)
{
    if (seg.len != n)
        throw std::invalid_argument("segment length " + std::to_string(seg.len) + " differs from n = " +
                                    std::to_string(n));
    // j*n <= k0 and k0 + n - 1 <= (j+2)*n - 1
    const auto c = line_coord(seg.start, seg.dir);
    return LineId{seg.dir, c.i, ceil_div(c.k, n) - 1};
}

std::vector<Point> spoil_targets(const LineId& id, const GameState& state)
{
    return spoil_targets(id, state.n(), [&](Point p) { return state.color_at(p); });
}

// ---------------------------------------------------------------------------
// LineLedger

LineLedger::LineLedger(std::int64_t n, bool rank_lines)
    : n_(n), rank_lines_(rank_lines), histogram_(static_cast<std::size_t>(2 * n + 1), 0)
{
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
}

void LineLedger::histogram_add(std::int64_t count, std::int64_t delta)
{
    if (count > 0)
        histogram_[static_cast<std::size_t>(count)] += delta;
}

void LineLedger::on_claim(Point p, PlayerColor color)
{
    if (color != PlayerColor::Red)
        return;
    for (const LineId& id : lines_through(p, n_)) {
        Record& rec = records_[id];
        if (!rec.spoiled) {
            histogram_add(rec.red_count, -1);
            histogram_add(rec.red_count + 1, +1);
            if (rank_lines_) {
                auto text = to_string(id);
                if (rec.red_count > 0)
                    ranked_.erase({rec.red_count, text});
                ranked_.insert({rec.red_count + 1, std::move(text)});
            }
        }
        ++rec.red_count;
    }
}

void LineLedger::mark_spoiled(const LineId& id)
{
    Record& rec = records_[id];
    if (rec.spoiled)
        return;
    rec.spoiled = true;
    if (rec.red_count > 0) {
        if (rank_lines_)
            ranked_.erase({rec.red_count, to_string(id)});
        histogram_add(rec.red_count, -1);
    }
}

const LineLedger::Record* LineLedger::find(const LineId& id) const
{
    auto it = records_.find(id);
    return it == records_.end() ? nullptr : &it->second;
}

bool LineLedger::is_spoiled(const LineId& id) const
{
    const Record* r = find(id);
    return r != nullptr && r->spoiled;
}

std::int64_t LineLedger::count_good_with_red_at_least(std::int64_t r) const
{
    if (r < 1)
        throw std::invalid_argument("threshold r must be >= 1");
    std::int64_t total = 0;
    for (auto c = static_cast<std::size_t>(r); c < histogram_.size(); ++c)
        total += histogram_[c];
    return total;
}

std::int64_t LineLedger::max_good_red() const
{
    for (auto c = static_cast<std::int64_t>(histogram_.size()) - 1; c > 0; --c)
        if (histogram_[static_cast<std::size_t>(c)] > 0)
            return c;
    return 0;
}

std::optional<LineId> LineLedger::best_good_line() const
{
    if (!rank_lines_)
        throw std::logic_error("best_good_line needs a ranking ledger");
    if (ranked_.empty())
        return std::nullopt;
    return parse_line_id(ranked_.begin()->second);
}

} // namespace nrow
