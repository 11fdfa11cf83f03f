#include "nrow/board.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace nrow {

namespace {

std::int64_t parse_int(std::string_view text)
{
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        auto next = text.find(sep, pos);
        out.push_back(text.substr(pos, next - pos));
        if (next == std::string_view::npos)
            break;
        pos = next + 1;
    }
    return out;
}

Point parse_point(std::string_view token)
{
    auto parts = split(token, ',');
    if (parts.size() != 2)
        throw std::invalid_argument("bad point: '" + std::string(token) + "'");
    return {parse_int(parts[0]), parse_int(parts[1])};
}

} // namespace

const char* to_string(LineDir4 d) noexcept
{
    switch (d) {
    case LineDir4::E: return "E";
    case LineDir4::N: return "N";
    case LineDir4::NE: return "NE";
    case LineDir4::SE: return "SE";
    }
    return "?";
}

std::string to_string(const Point& p)
{
    return std::to_string(p.x) + "," + std::to_string(p.y);
}

std::string to_string(const Segment& s)
{
    return "(" + to_string(s.start) + ") " + to_string(s.dir) + " len " + std::to_string(s.len);
}

std::vector<Point> Segment::points() const
{
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(len));
    for (std::int64_t k = 0; k < len; ++k)
        out.push_back(at(k));
    return out;
}

void Schedule::validate() const
{
    if (evenA < 0 || evenB < 0 || oddA < 0 || oddC < 0)
        throw std::invalid_argument("schedule coefficients must be non-negative");
    if (oddA == 0 && oddC == 0)
        throw std::invalid_argument("schedule gives Maker no points on any turn");
}

std::int64_t quota(const Schedule& s, std::int64_t t)
{
    if (t < 1)
        throw std::invalid_argument("turn index must be >= 1, got " + std::to_string(t));
    if (t % 2 == 0)
        return s.evenA * (t / 2) + s.evenB;
    return s.oddA * ((t - 1) / 2) + s.oddC;
}

std::int64_t cumulative_maker_quota(const Schedule& s, std::int64_t t)
{
    if (t < 1)
        throw std::invalid_argument("turn index must be >= 1, got " + std::to_string(t));
    // odd turns 2m+1 for m = 0..last
    const std::int64_t last = (t - 1) / 2;
    return s.oddA * last * (last + 1) / 2 + s.oddC * (last + 1);
}

Schedule parse_schedule(const std::string& text)
{
    if (text == "identity")
        return Schedule::identity();
    if (text.rfind("const:", 0) == 0)
        return Schedule::constant(parse_int(std::string_view(text).substr(6)));
    auto parts = split(text, ',');
    if (parts.size() != 4)
        throw std::invalid_argument("schedule must be 'identity', 'const:k' or 'a,b,c,d': '" + text + "'");
    return {parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]), parse_int(parts[3])};
}

std::string to_string(const Schedule& s)
{
    return std::to_string(s.evenA) + "," + std::to_string(s.evenB) + "," + std::to_string(s.oddA) + "," +
           std::to_string(s.oddC);
}

void GameConfig::validate() const
{
    if (n < 1)
        throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
    schedule.validate();
}

// ---------------------------------------------------------------------------
// RunIndex

RunIndex::Merge RunIndex::claim(Point p, PlayerColor color)
{
    Merge m;
    for (auto d : kLineDirs) {
        const auto i = static_cast<std::size_t>(d);
        const Point s = step(d);
        m.before[i] = run_from_end(p - s, color, d);
        m.after[i] = run_from_end(p + s, color, d);
    }
    Cell& cell = cells_[p];
    cell.color = color;
    for (auto d : kLineDirs) {
        const auto i = static_cast<std::size_t>(d);
        const std::int64_t len = m.length(d);
        const Point s = step(d);
        cell.run[i] = len;
        if (m.before[i] > 0)
            cells_.find(p - m.before[i] * s)->second.run[i] = len;
        if (m.after[i] > 0)
            cells_.find(p + m.after[i] * s)->second.run[i] = len;
    }
    return m;
}

const RunIndex::Cell* RunIndex::find(Point p) const noexcept
{
    auto it = cells_.find(p);
    return it == cells_.end() ? nullptr : &it->second;
}

std::optional<PlayerColor> RunIndex::color_at(Point p) const noexcept
{
    if (const Cell* c = find(p))
        return c->color;
    return std::nullopt;
}

std::int64_t RunIndex::run_from_end(Point p, PlayerColor color, LineDir4 d) const noexcept
{
    const Cell* c = find(p);
    if (c == nullptr || c->color != color)
        return 0;
    return c->run[static_cast<std::size_t>(d)];
}

std::int64_t RunIndex::stored_run(Point p, LineDir4 d) const noexcept
{
    const Cell* c = find(p);
    return c == nullptr ? 0 : c->run[static_cast<std::size_t>(d)];
}

// ---------------------------------------------------------------------------
// Move errors

const char* to_string(MoveErrorCode c) noexcept
{
    switch (c) {
    case MoveErrorCode::Occupied: return "occupied";
    case MoveErrorCode::WrongCount: return "wrong_count";
    case MoveErrorCode::Duplicate: return "duplicate";
    case MoveErrorCode::GameOver: return "game_over";
    }
    return "?";
}

MoveError::MoveError(MoveErrorCode code, std::string what, std::optional<Point> point)
    : std::runtime_error(std::move(what)), code_(code), point_(point)
{
}

// ---------------------------------------------------------------------------
// GameState

GameState::GameState(GameConfig config) : config_(config)
{
    config_.validate();
}

void GameState::validate(std::span<const Point> points) const
{
    if (winner_)
        throw MoveError(MoveErrorCode::GameOver, "game is already over");
    const std::int64_t expected = quota_now();
    if (static_cast<std::int64_t>(points.size()) != expected)
        throw MoveError(MoveErrorCode::WrongCount, "turn " + std::to_string(turn_) + " expects " +
                                                       std::to_string(expected) + " points, got " +
                                                       std::to_string(points.size()));
    PointSet seen;
    seen.reserve(points.size());
    for (const Point& p : points) {
        if (!seen.insert(p).second)
            throw MoveError(MoveErrorCode::Duplicate, "point " + to_string(p) + " listed twice", p);
        if (board_.contains(p))
            throw MoveError(MoveErrorCode::Occupied, "point " + to_string(p) + " is already claimed", p);
    }
}

void GameState::apply(std::span<const Point> points)
{
    validate(points);
    const PlayerColor mover = to_move();
    auto& runs = long_runs_[static_cast<std::size_t>(mover)];
    for (const Point& p : points) {
        const auto merge = board_.claim(p, mover);
        for (auto d : kLineDirs) {
            const auto i = static_cast<std::size_t>(d);
            const std::int64_t len = merge.length(d);
            if (len < config_.n)
                continue;
            const Point s = step(d);
            if (merge.before[i] >= config_.n)
                runs.erase(Segment{p - merge.before[i] * s, d, merge.before[i]});
            if (merge.after[i] >= config_.n)
                runs.erase(Segment{p + s, d, merge.after[i]});
            runs.insert(Segment{p - merge.before[i] * s, d, len});
        }
        if (bounds_.empty) {
            bounds_ = {p.x, p.x, p.y, p.y, false};
        } else {
            bounds_.min_x = std::min(bounds_.min_x, p.x);
            bounds_.max_x = std::max(bounds_.max_x, p.x);
            bounds_.min_y = std::min(bounds_.min_y, p.y);
            bounds_.max_y = std::max(bounds_.max_y, p.y);
        }
    }
    history_.push_back(Move{turn_, mover, std::vector<Point>(points.begin(), points.end())});
    const bool can_win = config_.mode == GameMode::TwoWinner || mover == PlayerColor::Red;
    if (can_win && !runs.empty())
        winner_ = Win{mover, turn_, Segment{runs.begin()->start, runs.begin()->dir, config_.n}};
    ++turn_;
}

std::optional<Segment> GameState::has_win(PlayerColor color) const
{
    const auto& runs = long_runs_[static_cast<std::size_t>(color)];
    if (runs.empty())
        return std::nullopt;
    // The least window of a run is the one at its start; run starts are pairwise distinct per dir.
    return Segment{runs.begin()->start, runs.begin()->dir, config_.n};
}

GameState apply_move(GameState state, std::span<const Point> points)
{
    state.apply(points);
    return state;
}

std::optional<Segment> has_win(const GameState& state, PlayerColor color)
{
    return state.has_win(color);
}

std::optional<Segment> brute_force_win_scan(const GameState& state, PlayerColor color)
{
    const std::int64_t n = state.n();
    std::optional<Segment> best;
    for (const auto& [p, cell] : state.board().cells()) {
        if (cell.color != color)
            continue;
        for (auto d : kLineDirs) {
            for (std::int64_t k = 0; k < n; ++k) {
                const Segment window{p - k * step(d), d, n};
                bool full = true;
                for (std::int64_t i = 0; i < n && full; ++i)
                    full = state.color_at(window.at(i)) == color;
                if (full && (!best || window < *best))
                    best = window;
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Transcripts

std::string format_move_line(const Move& m)
{
    std::string out = "t=" + std::to_string(m.turn);
    for (const Point& p : m.points)
        out += " " + to_string(p);
    return out;
}

std::string write_transcript(const GameConfig& config, std::span<const Move> moves)
{
    std::ostringstream out;
    out << "n=" << config.n << " schedule=" << to_string(config.schedule)
        << " mode=" << (config.mode == GameMode::MakerBreaker ? "MB" : "TW") << '\n';
    for (const Move& m : moves)
        out << format_move_line(m) << '\n';
    return out.str();
}

Transcript parse_transcript(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty transcript");

    Transcript tr;
    bool have_n = false, have_schedule = false, have_mode = false;
    std::istringstream header(line);
    std::string token;
    while (header >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad header token: '" + token + "'");
        auto key = token.substr(0, eq);
        auto value = token.substr(eq + 1);
        if (key == "n") {
            tr.config.n = parse_int(value);
            have_n = true;
        } else if (key == "schedule") {
            tr.config.schedule = parse_schedule(value);
            have_schedule = true;
        } else if (key == "mode") {
            if (value == "MB")
                tr.config.mode = GameMode::MakerBreaker;
            else if (value == "TW")
                tr.config.mode = GameMode::TwoWinner;
            else
                throw std::invalid_argument("bad mode: '" + value + "'");
            have_mode = true;
        } else {
            throw std::invalid_argument("unknown header key: '" + key + "'");
        }
    }
    if (!have_n || !have_schedule || !have_mode)
        throw std::invalid_argument("transcript header needs n, schedule and mode");

    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        if (!(row >> token) || token.rfind("t=", 0) != 0)
            throw std::invalid_argument("bad move line: '" + line + "'");
        Move m;
        m.turn = parse_int(std::string_view(token).substr(2));
        if (m.turn < 1)
            throw std::invalid_argument("bad turn index in: '" + line + "'");
        m.player = mover_at(m.turn);
        while (row >> token)
            m.points.push_back(parse_point(token));
        tr.moves.push_back(std::move(m));
    }
    return tr;
}

GameState replay(const Transcript& transcript)
{
    GameState state(transcript.config);
    for (const Move& m : transcript.moves) {
        if (m.turn != state.turn())
            throw std::invalid_argument("transcript turn " + std::to_string(m.turn) + " out of sequence");
        state.apply(m.points);
    }
    return state;
}

} // namespace nrow
