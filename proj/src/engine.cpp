#include "nrow/engine.hpp"

#include "nrow/strategies.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace nrow {

std::int64_t GameRecord::max_l() const noexcept
{
    std::int64_t best = 0;
    for (const auto& e : timeline)
        best = std::max(best, e.l_t);
    return best;
}

StrategyBug::StrategyBug(std::string strategy, const std::string& detail)
    : std::runtime_error("strategy '" + strategy + "': " + detail), strategy_(std::move(strategy))
{
}

GameRecord play_game(const GameConfig& config, std::string_view maker, std::string_view breaker, std::uint64_t seed,
                     std::int64_t cap, std::span<const std::int64_t> r_thresholds)
{
    if (cap < 1)
        throw std::invalid_argument("turn cap must be >= 1");
    for (auto r : r_thresholds)
        if (r < 1)
            throw std::invalid_argument("diagnostic thresholds must be >= 1");

    SplitMix64 seeder{seed};
    const std::uint64_t maker_seed = seeder.next();
    const std::uint64_t breaker_seed = seeder.next();
    std::array<std::unique_ptr<Strategy>, 2> players{make_strategy(maker, PlayerColor::Red, config, maker_seed),
                                                     make_strategy(breaker, PlayerColor::Blue, config, breaker_seed)};

    GameRecord record;
    record.config = config;
    record.maker = maker;
    record.breaker = breaker;
    record.seed = seed;
    record.r_thresholds.assign(r_thresholds.begin(), r_thresholds.end());

    GameState state(config);
    // Diagnostics come from the Breaker's own ledger when it keeps one (so spoils count), else from an
    // unspoiled shadow ledger.
    LineLedger shadow(config.n, false);
    Strategy& blue = *players[1];

    while (state.turn() <= cap && !state.over()) {
        Strategy& mover = *players[static_cast<std::size_t>(state.to_move())];
        const std::int64_t q = state.quota_now();
        std::vector<Point> points;
        try {
            points = mover.choose(state, q);
            state.apply(points);
        } catch (const std::exception& e) {
            throw StrategyBug(std::string(mover.name()), e.what());
        }
        if (!blue.ledger())
            for (const Point& p : points)
                shadow.on_claim(p, state.history().back().player);
        for (auto& player : players)
            player->observe(state);

        const LineLedger& ledger = blue.ledger() ? *blue.ledger() : shadow;
        TimelineEntry entry{state.turn() - 1, l_t(ledger), {}};
        for (auto r : r_thresholds)
            entry.a_r.push_back(a_r_t(ledger, r));
        record.timeline.push_back(std::move(entry));
    }

    if (const auto& w = state.winner()) {
        record.win_time = w->turn;
        record.winner = w->color;
        record.win_segment = w->segment;
    } else {
        record.truncated_at = cap;
    }
    record.moves = state.history();
    return record;
}

// ---------------------------------------------------------------------------
// Sweeps

void SweepSpec::validate() const
{
    if (ns.empty())
        throw std::invalid_argument("sweep needs at least one n");
    if (matchups.empty())
        throw std::invalid_argument("sweep needs at least one matchup");
    if (seeds < 1)
        throw std::invalid_argument("seeds per cell must be >= 1");
    if (cap && *cap < 1)
        throw std::invalid_argument("cap must be >= 1");
    for (auto n : ns)
        if (n < 1)
            throw std::invalid_argument("n must be >= 1");
    for (auto r : r_thresholds)
        if (r < 1)
            throw std::invalid_argument("r thresholds must be >= 1");
    for (const auto& m : matchups)
        if (!is_known_strategy(m.maker) || !is_known_strategy(m.breaker))
            throw std::invalid_argument("unknown strategy in matchup " + m.maker + ":" + m.breaker);
    schedule.validate();
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(trim(item));
    return out;
}

std::int64_t to_int(const std::string& s)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (used != s.size())
        throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

} // namespace

SweepSpec parse_sweep_spec(const std::string& text)
{
    SweepSpec spec;
    std::istringstream in(text);
    std::string line;
    bool have_n = false, have_matchups = false;
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "n") {
            for (const auto& v : split_list(value))
                spec.ns.push_back(to_int(v));
            have_n = true;
        } else if (key == "matchups") {
            for (const auto& v : split_list(value)) {
                const auto colon = v.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("matchup must be maker:breaker, got '" + v + "'");
                spec.matchups.push_back({v.substr(0, colon), v.substr(colon + 1)});
            }
            have_matchups = true;
        } else if (key == "seeds") {
            spec.seeds = to_int(value);
        } else if (key == "seed_base") {
            spec.seed_base = static_cast<std::uint64_t>(to_int(value));
        } else if (key == "cap") {
            spec.cap = to_int(value);
        } else if (key == "r") {
            for (const auto& v : split_list(value))
                spec.r_thresholds.push_back(to_int(v));
        } else if (key == "schedule") {
            spec.schedule = parse_schedule(value);
        } else if (key == "mode") {
            if (value == "MB")
                spec.mode = GameMode::MakerBreaker;
            else if (value == "TW")
                spec.mode = GameMode::TwoWinner;
            else
                throw std::invalid_argument("mode must be MB or TW");
        } else {
            throw std::invalid_argument("unknown sweep key '" + key + "'");
        }
    }
    if (!have_n || !have_matchups)
        throw std::invalid_argument("sweep spec needs n= and matchups=");
    spec.validate();
    return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads)
{
    spec.validate();
    struct Cell
    {
        std::int64_t n;
        const Matchup* matchup;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (auto n : spec.ns)
        for (const auto& m : spec.matchups)
            for (std::int64_t s = 0; s < spec.seeds; ++s)
                cells.push_back({n, &m, spec.seed_base + static_cast<std::uint64_t>(s)});

    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const Cell& c = cells[i];
            SweepRow& row = rows[i];
            row.n = c.n;
            row.schedule = spec.schedule;
            row.maker = c.matchup->maker;
            row.breaker = c.matchup->breaker;
            row.seed = c.seed;
            const auto start = std::chrono::steady_clock::now();
            try {
                const GameConfig config{c.n, spec.schedule, spec.mode};
                const auto rec = play_game(config, row.maker, row.breaker, c.seed, spec.cap.value_or(4 * c.n + 4),
                                           spec.r_thresholds);
                row.win_time = rec.win_time;
                row.truncated_at = rec.truncated_at;
                row.max_l = rec.max_l();
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            row.wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    return rows;
}

namespace {

std::string csv_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string format_sweep_csv(std::span<const SweepRow> rows, bool wall_clock)
{
    std::ostringstream out;
    out << kSweepHeader << '\n';
    char buf[64];
    for (const auto& r : rows) {
        out << r.n << ',' << csv_quote(to_string(r.schedule)) << ',' << r.maker << ',' << r.breaker << ',' << r.seed
            << ',';
        if (!r.error.empty()) {
            out << csv_quote("error: " + r.error) << ',';
        } else if (r.win_time) {
            std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(*r.win_time) / static_cast<double>(r.n));
            out << *r.win_time << ',' << buf;
        } else {
            out << ',';
        }
        out << ',' << r.max_l << ',';
        if (wall_clock) {
            std::snprintf(buf, sizeof buf, "%.1f", r.wall_ms);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace nrow
