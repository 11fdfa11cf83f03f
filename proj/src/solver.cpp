#include "nrow/solver.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace nrow {

const char* to_string(Seat s) noexcept
{
    return s == Seat::First ? "first" : "second";
}

GameConfig solver_config(std::int64_t n)
{
    return GameConfig{n, Schedule::identity(), GameMode::TwoWinner};
}

std::optional<Seat> known_winner(std::int64_t n) noexcept
{
    switch (n) {
    case 1:
    case 3:
    case 4:
    case 6:
    case 7: return Seat::First;
    case 2:
    case 5: return Seat::Second;
    default: return std::nullopt;
    }
}

namespace {

constexpr std::array<std::array<std::int64_t, 4>, 8> kSymmetries{{
    {1, 0, 0, 1},
    {-1, 0, 0, 1},
    {1, 0, 0, -1},
    {-1, 0, 0, -1},
    {0, 1, 1, 0},
    {0, -1, 1, 0},
    {0, 1, -1, 0},
    {0, -1, -1, 0},
}};

struct KeyHash
{
    std::size_t operator()(const CanonicalKey& k) const noexcept
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (auto v : k) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

CanonicalKey canonical_of(const std::vector<std::pair<PlayerColor, Point>>& cells)
{
    CanonicalKey best;
    std::vector<std::array<std::int64_t, 3>> image(cells.size());
    for (const auto& m : kSymmetries) {
        std::int64_t min_x = 0, min_y = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const Point p = cells[i].second;
            const std::int64_t x = m[0] * p.x + m[1] * p.y;
            const std::int64_t y = m[2] * p.x + m[3] * p.y;
            image[i] = {x, y, static_cast<std::int64_t>(cells[i].first)};
            min_x = i == 0 ? x : std::min(min_x, x);
            min_y = i == 0 ? y : std::min(min_y, y);
        }
        for (auto& c : image) {
            c[0] -= min_x;
            c[1] -= min_y;
        }
        std::sort(image.begin(), image.end());
        CanonicalKey key;
        key.reserve(image.size() * 3);
        for (const auto& c : image)
            key.insert(key.end(), c.begin(), c.end());
        if (best.empty() || key < best)
            best = std::move(key);
    }
    return best;
}

std::vector<std::pair<PlayerColor, Point>> cells_of(const GameState& state)
{
    std::vector<std::pair<PlayerColor, Point>> out;
    out.reserve(state.claimed_count());
    for (const auto& [p, cell] : state.board().cells())
        out.emplace_back(cell.color, p);
    return out;
}

/// Calls fn(subset) for every k-subset of items in lexicographic index order; stops when fn returns false.
template <class Fn>
bool for_each_subset(const std::vector<Point>& items, std::int64_t k, Fn&& fn)
{
    const auto size = static_cast<std::int64_t>(items.size());
    if (k > size)
        return true;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    std::vector<Point> subset(static_cast<std::size_t>(k));
    while (true) {
        for (std::int64_t i = 0; i < k; ++i)
            subset[static_cast<std::size_t>(i)] = items[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        if (!fn(subset))
            return false;
        std::int64_t i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == size - k + i)
            --i;
        if (i < 0)
            return true;
        ++idx[static_cast<std::size_t>(i)];
        for (std::int64_t j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

/// A winning move for the side to move inside the region, if one exists.
std::optional<std::vector<Point>> win_in_one(const GameState& state, const std::vector<Point>& region,
                                             std::int64_t quota)
{
    const std::int64_t n = state.n();
    const PlayerColor own = state.to_move();
    const std::unordered_set<Point, PointHash> in_region(region.begin(), region.end());
    std::vector<Point> need;
    for (const Point& p : region) {
        for (auto d : kLineDirs) {
            const Point s = step(d);
            for (std::int64_t off = 0; off < n; ++off) {
                const Point start = p - off * s;
                need.clear();
                bool ok = true;
                for (std::int64_t i = 0; i < n && ok; ++i) {
                    const Point q = start + i * s;
                    const auto c = state.color_at(q);
                    if (!c) {
                        ok = in_region.count(q) != 0;
                        need.push_back(q);
                        ok = ok && static_cast<std::int64_t>(need.size()) <= quota;
                    } else {
                        ok = *c == own;
                    }
                }
                if (!ok)
                    continue;
                std::vector<Point> move = need;
                for (const Point& r : region) {
                    if (static_cast<std::int64_t>(move.size()) == quota)
                        break;
                    if (std::find(need.begin(), need.end(), r) == need.end())
                        move.push_back(r);
                }
                return move;
            }
        }
    }
    return std::nullopt;
}

struct NodeCapExceeded
{
};

class Search
{
public:
    Search(std::int64_t n, std::int64_t radius, std::int64_t node_cap, bool memoize)
        : n_(n), radius_(radius), node_cap_(node_cap), memoize_(memoize)
    {
    }

    std::int64_t nodes() const noexcept { return nodes_; }

    /// Can `player` force a win at or before turn `horizon`?
    bool forces_win(const GameState& state, PlayerColor player, std::int64_t horizon)
    {
        const std::int64_t t = state.turn();
        if (t > horizon)
            return false;
        if (++nodes_ > node_cap_)
            throw NodeCapExceeded{};
        const std::int64_t q = state.quota_now();
        const auto region = relevance_region(state, radius_, q);
        const bool ours = state.to_move() == player;
        if (ours && win_in_one(state, region, q))
            return true;
        if (t == horizon)
            return false;
        if (!ours && win_in_one(state, region, q))
            return false;

        CanonicalKey key;
        if (memoize_) {
            key = canonical_of(cells_of(state));
            key.push_back(static_cast<std::int64_t>(player));
            key.push_back(horizon);
            if (auto it = memo_.find(key); it != memo_.end())
                return it->second;
        }
        bool result = !ours;
        for (const auto& move : moves_from(state, region, q)) {
            GameState child = state;
            child.apply(move);
            if (forces_win(child, player, horizon) == ours) {
                result = ours;
                break;
            }
        }
        if (memoize_)
            memo_.emplace(std::move(key), result);
        return result;
    }

    /// A move for `player` keeping the forced win (precondition: forces_win holds).
    std::vector<Point> winning_move(const GameState& state, PlayerColor player, std::int64_t horizon)
    {
        const std::int64_t q = state.quota_now();
        const auto region = relevance_region(state, radius_, q);
        if (auto w = win_in_one(state, region, q))
            return *w;
        for (const auto& move : moves_from(state, region, q)) {
            GameState child = state;
            child.apply(move);
            if (forces_win(child, player, horizon))
                return move;
        }
        throw std::logic_error("no winning continuation found");
    }

    std::vector<std::vector<Point>> moves_from(const GameState& state, const std::vector<Point>& region,
                                               std::int64_t quota) const
    {
        std::vector<std::vector<Point>> out;
        std::unordered_set<CanonicalKey, KeyHash> seen;
        auto base = cells_of(state);
        const PlayerColor mover = state.to_move();
        for_each_subset(region, quota, [&](const std::vector<Point>& subset) {
            auto cells = base;
            for (const Point& p : subset)
                cells.emplace_back(mover, p);
            if (seen.insert(canonical_of(cells)).second)
                out.push_back(subset);
            return true;
        });
        return out;
    }

private:
    std::int64_t n_;
    std::int64_t radius_;
    std::int64_t node_cap_;
    bool memoize_;
    std::int64_t nodes_ = 0;
    std::unordered_map<CanonicalKey, bool, KeyHash> memo_;
};

} // namespace

CanonicalKey canonical_key(const GameState& state)
{
    return canonical_of(cells_of(state));
}

std::vector<Point> relevance_region(const GameState& state, std::int64_t radius, std::int64_t quota)
{
    std::int64_t reach = std::min(radius, state.n());
    std::vector<Point> centres;
    if (state.claimed_count() == 0)
        centres.push_back({0, 0});
    else
        for (const auto& [p, cell] : state.board().cells())
            centres.push_back(p);

    while (true) {
        std::unordered_set<Point, PointHash> found;
        for (const Point& c : centres)
            for (std::int64_t dx = -reach; dx <= reach; ++dx)
                for (std::int64_t dy = -reach; dy <= reach; ++dy) {
                    const Point p{c.x + dx, c.y + dy};
                    if (!state.is_claimed(p))
                        found.insert(p);
                }
        if (static_cast<std::int64_t>(found.size()) >= quota) {
            std::vector<Point> out(found.begin(), found.end());
            std::sort(out.begin(), out.end());
            return out;
        }
        ++reach;
    }
}

std::vector<std::vector<Point>> candidate_moves(const GameState& state, std::int64_t radius)
{
    const std::int64_t q = state.quota_now();
    if (q == 0)
        return {std::vector<Point>{}};
    Search search(state.n(), radius, 0, false);
    return search.moves_from(state, relevance_region(state, radius, q), q);
}

SolveResult solve(std::int64_t n, const SolverOptions& options)
{
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    const std::int64_t radius = options.radius > 0 ? std::min(options.radius, n) : n;
    Search search(n, radius, options.node_cap, options.memoize);
    const GameState root(solver_config(n));

    std::int64_t refuted = 0;
    try {
        // Someone holds quota >= n by turn n + 1 and the region always has room for a fresh line.
        for (std::int64_t horizon = 1; horizon <= n + 1; ++horizon) {
            const PlayerColor player = mover_at(horizon);
            if (!search.forces_win(root, player, horizon)) {
                refuted = horizon;
                continue;
            }
            SolverVerdict v;
            v.n = n;
            v.winner = player == PlayerColor::Red ? Seat::First : Seat::Second;
            v.win_turn = horizon;
            v.search_radius = radius;

            GameState state = root;
            while (!state.over()) {
                std::vector<Point> move;
                if (state.to_move() == player) {
                    move = search.winning_move(state, player, horizon);
                } else {
                    const auto region = relevance_region(state, radius, state.quota_now());
                    move = search.moves_from(state, region, state.quota_now()).front();
                }
                state.apply(move);
            }
            v.principal_variation = state.history();
            v.nodes_expanded = search.nodes();

            std::ostringstream note;
            note << "exact for the game restricted to points within Chebyshev distance " << std::min(radius, n)
                 << " of claimed points; not a proof for the unbounded board";
            if (auto known = known_winner(n))
                note << "; " << (*known == v.winner ? "agrees with" : "contradicts")
                     << " the known small-case winner (" << to_string(*known) << ")";
            v.exactness_note = note.str();
            return v;
        }
    } catch (const NodeCapExceeded&) {
        return SolverInconclusive{n, radius, search.nodes(), refuted, "node cap exceeded"};
    }
    return SolverInconclusive{n, radius, search.nodes(), refuted, "no forced win found within n + 1 turns"};
}

bool verify_variation(const SolverVerdict& verdict)
{
    if (verdict.n < 1)
        return false;
    try {
        GameState state(solver_config(verdict.n));
        for (const Move& m : verdict.principal_variation) {
            if (m.turn != state.turn() || state.over())
                return false;
            state.apply(m.points);
        }
        const auto& w = state.winner();
        const PlayerColor expected = verdict.winner == Seat::First ? PlayerColor::Red : PlayerColor::Blue;
        return w && w->color == expected && w->turn == verdict.win_turn;
    } catch (const MoveError&) {
        return false;
    }
}

std::string format_verdict(const SolverVerdict& v)
{
    std::ostringstream out;
    out << "n=" << v.n << " winner=" << to_string(v.winner) << " win_turn=" << v.win_turn
        << " radius=" << v.search_radius << " nodes=" << v.nodes_expanded << '\n';
    out << write_transcript(solver_config(v.n), v.principal_variation);
    return out.str();
}

} // namespace nrow
