#include "nrow/strategies.hpp"

#include <algorithm>
#include <queue>

namespace nrow {

Point step(Direction8 d) noexcept
{
    switch (d) {
    case Direction8::N: return {0, 1};
    case Direction8::NE: return {1, 1};
    case Direction8::E: return {1, 0};
    case Direction8::SE: return {1, -1};
    case Direction8::S: return {0, -1};
    case Direction8::SW: return {-1, -1};
    case Direction8::W: return {-1, 0};
    case Direction8::NW: return {-1, 1};
    }
    return {0, 0};
}

Direction8 opposite(Direction8 d) noexcept
{
    return static_cast<Direction8>((static_cast<int>(d) + 4) % 8);
}

const char* to_string(Direction8 d) noexcept
{
    static constexpr const char* names[] = {"N", "NE", "E", "SE", "S", "SW", "W", "NW"};
    return names[static_cast<int>(d)];
}

Direction8 compass_of(Point p, const CompassBase& base) noexcept
{
    const std::int64_t r = ((p.x - kCompassRowShift * p.y) % kCompassPeriod + kCompassPeriod) % kCompassPeriod;
    return base[static_cast<std::size_t>(r)];
}

// ---------------------------------------------------------------------------
// Spiral enumeration

Point spiral_next(Point p) noexcept
{
    const std::int64_t r = std::max(std::abs(p.x), std::abs(p.y));
    if (r == 0)
        return {1, 0};
    if (p.x == r && p.y == -r)
        return {r + 1, -r};
    if (p.x == r && p.y < r)
        return {p.x, p.y + 1};
    if (p.y == r && p.x > -r)
        return {p.x - 1, p.y};
    if (p.x == -r && p.y > -r)
        return {p.x, p.y - 1};
    return {p.x + 1, p.y};
}

Point SpiralCursor::first_unclaimed(const GameState& state)
{
    while (state.is_claimed(at_))
        at_ = spiral_next(at_);
    return at_;
}

namespace {

std::vector<Point> fill_from(const GameState& state, std::int64_t count, const PointSet& pending, Point at)
{
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
    for (; static_cast<std::int64_t>(out.size()) < count; at = spiral_next(at))
        if (!state.is_claimed(at) && !pending.count(at))
            out.push_back(at);
    return out;
}

void append_fill(std::vector<Point>& out, PointSet& pending, const GameState& state, std::int64_t count,
                 SpiralCursor& cursor)
{
    for (const Point& p : arbitrary_fill(state, count, pending, cursor)) {
        out.push_back(p);
        pending.insert(p);
    }
}

std::vector<Point> direction_breaker_impl(const GameState& state, std::int64_t quota, SpiralCursor& cursor)
{
    std::vector<Point> out;
    PointSet pending;
    const auto& history = state.history();
    if (!history.empty() && history.back().player != state.to_move()) {
        for (const Point& v : history.back().points) {
            if (static_cast<std::int64_t>(out.size()) >= quota)
                break;
            const Point q = next_available(state, v, compass_of(v), pending);
            out.push_back(q);
            pending.insert(q);
        }
    }
    append_fill(out, pending, state, quota - static_cast<std::int64_t>(out.size()), cursor);
    return out;
}

std::vector<Point> random_impl(const GameState& state, std::int64_t quota, SplitMix64& rng, Point start)
{
    std::vector<Point> out;
    // The window is the 50 lowest-index free spiral points; it slides forward as picks are taken.
    std::vector<Point> window;
    Point at = start;
    auto refill = [&] {
        for (; static_cast<std::int64_t>(window.size()) < kRandomMakerWindow; at = spiral_next(at))
            if (!state.is_claimed(at))
                window.push_back(at);
    };
    for (std::int64_t pick = 0; pick < quota; ++pick) {
        refill();
        const auto idx = static_cast<std::ptrdiff_t>(rng.below(window.size()));
        out.push_back(window[idx]);
        window.erase(window.begin() + idx);
    }
    return out;
}

} // namespace

std::vector<Point> arbitrary_fill(const GameState& state, std::int64_t count, const PointSet& pending)
{
    return fill_from(state, count, pending, Point{0, 0});
}

std::vector<Point> arbitrary_fill(const GameState& state, std::int64_t count, const PointSet& pending,
                                  SpiralCursor& cursor)
{
    return fill_from(state, count, pending, cursor.first_unclaimed(state));
}

Point next_available(const GameState& state, Point p, Direction8 d, const PointSet& pending)
{
    const Point s = step(d);
    Point q = p + s;
    while (state.is_claimed(q) || pending.count(q))
        q = q + s;
    return q;
}

// ---------------------------------------------------------------------------
// Breakers

std::vector<Point> direction_breaker(const GameState& state, std::int64_t quota, SplitMix64&)
{
    SpiralCursor cursor;
    return direction_breaker_impl(state, quota, cursor);
}

std::vector<Point> line_spoil_breaker(const GameState& state, LineLedger& ledger, std::int64_t quota,
                                      SplitMix64& rng)
{
    SpiralCursor cursor;
    return line_spoil_breaker(state, ledger, quota, rng, cursor);
}

std::vector<Point> line_spoil_breaker(const GameState& state, LineLedger& ledger, std::int64_t quota,
                                      SplitMix64&, SpiralCursor& cursor)
{
    std::vector<Point> out;
    PointSet pending;
    auto color_at = [&](Point p) -> std::optional<PlayerColor> {
        if (pending.count(p))
            return PlayerColor::Blue;
        return state.color_at(p);
    };
    std::int64_t remaining = quota;
    while (auto best = ledger.best_good_line()) {
        auto targets = spoil_targets(*best, state.n(), color_at);
        if (static_cast<std::int64_t>(targets.size()) > remaining)
            break;
        for (const Point& p : targets) {
            out.push_back(p);
            pending.insert(p);
        }
        remaining -= static_cast<std::int64_t>(targets.size());
        ledger.mark_spoiled(*best);
    }
    append_fill(out, pending, state, remaining, cursor);
    return out;
}

// ---------------------------------------------------------------------------
// Makers

std::vector<Point> sprint_maker(const GameState& state, std::int64_t quota)
{
    const std::int64_t n = state.n();
    const Bounds& b = state.bounds();
    const std::int64_t row = b.empty ? 0 : b.max_y + 4 * n + 1;
    const std::int64_t x0 = b.empty ? 0 : b.min_x;
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(quota));
    std::int64_t spread_from = x0;
    if (quota >= n) {
        for (std::int64_t k = 0; k < n; ++k)
            out.push_back({x0 + k, row});
        spread_from = x0 + n + 1;
    }
    for (std::int64_t k = 0; static_cast<std::int64_t>(out.size()) < quota; ++k)
        out.push_back({spread_from + 2 * k, row});
    return out;
}

std::vector<Point> random_maker(const GameState& state, std::int64_t quota, SplitMix64& rng)
{
    return random_impl(state, quota, rng, Point{0, 0});
}

namespace {

constexpr std::array<Point, 8> kNeighbours{Point{1, 0}, Point{1, 1}, Point{0, 1}, Point{-1, 1},
                                           Point{-1, 0}, Point{-1, -1}, Point{0, -1}, Point{1, -1}};

struct GreedyKey
{
    std::int64_t score = 0;
    std::int64_t tie = 0;
    Point p;
};

/// True when a should be picked over b.
bool greedy_better(const GreedyKey& a, const GreedyKey& b) noexcept
{
    if (a.score != b.score)
        return a.score > b.score;
    if (a.tie != b.tie)
        return a.tie < b.tie;
    return a.p < b.p;
}

} // namespace

std::vector<Point> greedy_maker(const GameState& state, std::int64_t quota, SplitMix64&)
{
    const PlayerColor own = state.to_move();
    const PlayerColor opp = opponent(own);
    const std::int64_t n = state.n();
    std::vector<Point> out;
    PointSet pending;

    auto is_own = [&](Point q) { return pending.count(q) || state.color_at(q) == own; };
    auto is_free = [&](Point q) { return !pending.count(q) && !state.is_claimed(q); };

    for (std::int64_t pick = 0; pick < quota; ++pick) {
        std::vector<Point> owned(pending.begin(), pending.end());
        for (const auto& [p, cell] : state.board().cells())
            if (cell.color == own)
                owned.push_back(p);

        PointSet candidates;
        for (const Point& p : owned)
            for (const Point& d : kNeighbours)
                if (is_free(p + d))
                    candidates.insert(p + d);
        if (owned.empty() && is_free(Point{0, 0}))
            candidates.insert(Point{0, 0});

        std::optional<GreedyKey> best;
        for (const Point& q : candidates) {
            std::array<std::int64_t, 4> len{};
            for (auto d : kLineDirs) {
                const Point s = step(d);
                std::int64_t l = 1;
                for (Point r = q + s; is_own(r); r = r + s)
                    ++l;
                for (Point r = q - s; is_own(r); r = r - s)
                    ++l;
                len[static_cast<std::size_t>(d)] = l;
            }
            GreedyKey key{*std::max_element(len.begin(), len.end()), 0, q};
            key.tie = n;
            for (auto d : kLineDirs) {
                if (len[static_cast<std::size_t>(d)] != key.score)
                    continue;
                const Point s = step(d);
                for (std::int64_t off = 0; off < n; ++off) {
                    const Point start = q - off * s;
                    std::int64_t count = 0;
                    for (std::int64_t i = 0; i < n; ++i)
                        count += state.color_at(start + i * s) == opp ? 1 : 0;
                    key.tie = std::min(key.tie, count);
                }
            }
            if (!best || greedy_better(key, *best))
                best = key;
        }
        const Point chosen = best ? best->p : arbitrary_fill(state, 1, pending).front();
        out.push_back(chosen);
        pending.insert(chosen);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Strategy objects

namespace {

class FillStrategy final : public Strategy
{
public:
    using Strategy::Strategy;
    std::string_view name() const noexcept override { return "fill"; }
    std::vector<Point> choose(const GameState& state, std::int64_t quota) override
    {
        return arbitrary_fill(state, quota, PointSet{}, cursor_);
    }

private:
    SpiralCursor cursor_;
};

class SprintMaker final : public Strategy
{
public:
    using Strategy::Strategy;
    std::string_view name() const noexcept override { return "sprint"; }
    std::vector<Point> choose(const GameState& state, std::int64_t quota) override
    {
        return sprint_maker(state, quota);
    }
};

class RandomMaker final : public Strategy
{
public:
    RandomMaker(PlayerColor side, std::uint64_t seed) : Strategy(side), rng_{seed} {}
    std::string_view name() const noexcept override { return "random"; }
    std::vector<Point> choose(const GameState& state, std::int64_t quota) override
    {
        return random_impl(state, quota, rng_, cursor_.first_unclaimed(state));
    }

private:
    SplitMix64 rng_;
    SpiralCursor cursor_;
};

class DirectionBreaker final : public Strategy
{
public:
    using Strategy::Strategy;
    std::string_view name() const noexcept override { return "direction"; }
    std::vector<Point> choose(const GameState& state, std::int64_t quota) override
    {
        return direction_breaker_impl(state, quota, cursor_);
    }

private:
    SpiralCursor cursor_;
};

class LineSpoilBreaker final : public Strategy
{
public:
    LineSpoilBreaker(PlayerColor side, std::int64_t n, std::uint64_t seed) : Strategy(side), ledger_(n), rng_{seed}
    {
    }
    std::string_view name() const noexcept override { return "line_spoil"; }
    void observe(const GameState& state) override
    {
        const auto& history = state.history();
        for (; synced_ < history.size(); ++synced_)
            for (const Point& p : history[synced_].points)
                ledger_.on_claim(p, history[synced_].player);
    }
    std::vector<Point> choose(const GameState& state, std::int64_t quota) override
    {
        observe(state);
        return line_spoil_breaker(state, ledger_, quota, rng_, cursor_);
    }
    const LineLedger* ledger() const noexcept override { return &ledger_; }

private:
    LineLedger ledger_;
    SplitMix64 rng_;
    SpiralCursor cursor_;
    std::size_t synced_ = 0;
};

/// Incremental form of greedy_maker: a shadow board with run lengths, per-line indexes of opponent
/// points, and a lazily revalidated heap of candidates. Scores only grow (own claims) and window
/// ties only worsen (opponent claims), and every improvement pushes a fresh entry, so an entry whose
/// recomputed key matches its stored key is the true best.
class GreedyMaker final : public Strategy
{
public:
    GreedyMaker(PlayerColor side, std::int64_t n) : Strategy(side), n_(n) {}
    std::string_view name() const noexcept override { return "greedy"; }

    void observe(const GameState& state) override
    {
        const auto& history = state.history();
        for (; synced_ < history.size(); ++synced_) {
            const Move& m = history[synced_];
            if (m.turn == own_turn_)
                continue;  // applied while choosing
            for (const Point& p : m.points)
                claim(p, m.player);
        }
    }

    std::vector<Point> choose(const GameState& state, std::int64_t quota) override
    {
        observe(state);
        own_turn_ = state.turn();
        std::vector<Point> out;
        for (std::int64_t pick = 0; pick < quota; ++pick) {
            const Point chosen = pick_one(state);
            out.push_back(chosen);
            claim(chosen, side());
        }
        return out;
    }

private:
    struct HeapOrder
    {
        bool operator()(const GreedyKey& a, const GreedyKey& b) const noexcept { return greedy_better(b, a); }
    };

    Point pick_one(const GameState& state)
    {
        if (!has_own_) {
            if (!shadow_.contains(Point{0, 0}))
                return {0, 0};
            return fallback(state);
        }
        while (!heap_.empty()) {
            GreedyKey top = heap_.top();
            heap_.pop();
            if (shadow_.contains(top.p))
                continue;
            const GreedyKey fresh = evaluate(top.p);
            if (fresh.score != top.score || fresh.tie < top.tie)
                continue;  // superseded by a newer entry
            if (fresh.tie > top.tie) {
                heap_.push(fresh);
                continue;
            }
            return top.p;
        }
        return fallback(state);
    }

    Point fallback(const GameState& state)
    {
        Point at = cursor_.first_unclaimed(state);
        while (shadow_.contains(at))
            at = spiral_next(at);
        return at;
    }

    GreedyKey evaluate(Point q) const
    {
        std::array<std::int64_t, 4> len{};
        for (auto d : kLineDirs) {
            const Point s = step(d);
            len[static_cast<std::size_t>(d)] =
                1 + shadow_.run_from_end(q - s, side(), d) + shadow_.run_from_end(q + s, side(), d);
        }
        GreedyKey key{*std::max_element(len.begin(), len.end()), n_, q};
        for (auto d : kLineDirs)
            if (len[static_cast<std::size_t>(d)] == key.score)
                key.tie = std::min(key.tie, min_window_opponents(q, d));
        return key;
    }

    /// Fewest opponent points over the n-windows along d that contain q.
    std::int64_t min_window_opponents(Point q, LineDir4 d) const
    {
        const auto c = line_coord(q, d);
        auto it = opponents_.find(LineKey{d, c.i});
        if (it == opponents_.end())
            return 0;
        const auto& ks = it->second;
        // Window starts range over [k-n+1, k]; the count only drops right after an opponent point.
        const std::int64_t first = c.k - n_ + 1;
        auto lo = std::lower_bound(ks.begin(), ks.end(), first);
        auto hi = std::lower_bound(lo, ks.end(), first + n_);
        std::int64_t best = hi - lo;
        while (best > 0 && lo != ks.end() && *lo < c.k) {
            const std::int64_t s = *lo + 1;
            ++lo;
            while (hi != ks.end() && *hi < s + n_)
                ++hi;
            best = std::min<std::int64_t>(best, hi - lo);
        }
        return best;
    }

    void claim(Point p, PlayerColor color)
    {
        const auto merge = shadow_.claim(p, color);
        if (color != side()) {
            for (auto d : kLineDirs) {
                const auto c = line_coord(p, d);
                auto& ks = opponents_[LineKey{d, c.i}];
                ks.insert(std::upper_bound(ks.begin(), ks.end(), c.k), c.k);
            }
            return;
        }
        has_own_ = true;
        for (auto d : kLineDirs) {
            const auto i = static_cast<std::size_t>(d);
            const Point s = step(d);
            for (const Point end : {p - (merge.before[i] + 1) * s, p + (merge.after[i] + 1) * s})
                if (!shadow_.contains(end))
                    heap_.push(evaluate(end));
        }
    }

    struct LineKey
    {
        LineDir4 dir;
        std::int64_t i;
        friend bool operator==(const LineKey&, const LineKey&) = default;
    };
    struct LineKeyHash
    {
        std::size_t operator()(const LineKey& k) const noexcept
        {
            return PointHash{}(Point{static_cast<std::int64_t>(k.dir), k.i});
        }
    };

    std::int64_t n_;
    RunIndex shadow_;
    std::unordered_map<LineKey, std::vector<std::int64_t>, LineKeyHash> opponents_;  // sorted k per line
    std::priority_queue<GreedyKey, std::vector<GreedyKey>, HeapOrder> heap_;
    SpiralCursor cursor_;
    bool has_own_ = false;
    std::size_t synced_ = 0;
    std::int64_t own_turn_ = 0;
};

} // namespace

bool is_known_strategy(std::string_view name) noexcept
{
    return std::find(kStrategyNames.begin(), kStrategyNames.end(), name) != kStrategyNames.end();
}

std::unique_ptr<Strategy> make_strategy(std::string_view name, PlayerColor side, const GameConfig& config,
                                        std::uint64_t seed)
{
    if (name == "direction")
        return std::make_unique<DirectionBreaker>(side);
    if (name == "line_spoil") {
        if (side != PlayerColor::Blue)
            throw std::invalid_argument("line_spoil only plays the Breaker (Blue) side");
        return std::make_unique<LineSpoilBreaker>(side, config.n, seed);
    }
    if (name == "sprint")
        return std::make_unique<SprintMaker>(side);
    if (name == "greedy")
        return std::make_unique<GreedyMaker>(side, config.n);
    if (name == "random")
        return std::make_unique<RandomMaker>(side, seed);
    if (name == "fill")
        return std::make_unique<FillStrategy>(side);
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

} // namespace nrow
