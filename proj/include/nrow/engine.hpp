// Game loop, per-turn line diagnostics, and matchup sweeps.
#pragma once

#include "nrow/board.hpp"
#include "nrow/line_cover.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nrow {

/// L_t: most Red points on any good line (0 if none).
inline std::int64_t l_t(const LineLedger& ledger)
{
    return ledger.max_good_red();
}

/// |A_r^t|: good lines with at least r Red points.
inline std::int64_t a_r_t(const LineLedger& ledger, std::int64_t r)
{
    return count_lines_with_red_at_least(ledger, r);
}

struct TimelineEntry
{
    std::int64_t t = 0;
    std::int64_t l_t = 0;
    std::vector<std::int64_t> a_r;  ///< one per requested threshold

    friend bool operator==(const TimelineEntry&, const TimelineEntry&) = default;
};

struct GameRecord
{
    GameConfig config;
    std::string maker;
    std::string breaker;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> win_time;
    std::optional<PlayerColor> winner;
    std::optional<Segment> win_segment;
    std::vector<std::int64_t> r_thresholds;
    std::vector<TimelineEntry> timeline;  ///< snapshot after every turn
    std::optional<std::int64_t> truncated_at;
    std::vector<Move> moves;

    std::int64_t max_l() const noexcept;

    friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

/// A strategy produced an illegal move or failed internally.
class StrategyBug : public std::runtime_error
{
public:
    StrategyBug(std::string strategy, const std::string& detail);
    const std::string& strategy() const noexcept { return strategy_; }

private:
    std::string strategy_;
};

/// Plays turns 1..cap (or until a win). Maker and Breaker RNG streams are the first and second
/// splitmix64 outputs of `seed`.
GameRecord play_game(const GameConfig& config, std::string_view maker, std::string_view breaker, std::uint64_t seed,
                     std::int64_t cap, std::span<const std::int64_t> r_thresholds = {});

struct Matchup
{
    std::string maker;
    std::string breaker;
    friend bool operator==(const Matchup&, const Matchup&) = default;
};

struct SweepSpec
{
    std::vector<std::int64_t> ns;
    std::vector<Matchup> matchups;
    std::int64_t seeds = 1;
    std::uint64_t seed_base = 1;
    std::optional<std::int64_t> cap;  ///< defaults to 4n + 4 per cell
    std::vector<std::int64_t> r_thresholds;
    Schedule schedule = Schedule::identity();
    GameMode mode = GameMode::MakerBreaker;

    void validate() const;
};

/// `key=value` lines: n, matchups (maker:breaker,...), seeds, seed_base, cap, r, schedule, mode.
/// Throws std::invalid_argument.
SweepSpec parse_sweep_spec(const std::string& text);

struct SweepRow
{
    std::int64_t n = 0;
    Schedule schedule;
    std::string maker;
    std::string breaker;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> win_time;
    std::optional<std::int64_t> truncated_at;
    std::int64_t max_l = 0;
    double wall_ms = 0.0;
    std::string error;
};

/// Rows ordered by (n, matchup, seed) whatever the completion order. threads = 0 picks hardware concurrency.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

inline constexpr std::string_view kSweepHeader = "n,schedule,maker,breaker,seed,win_time,ratio,max_L,wall_ms";

/// CSV with kSweepHeader. Without wall clock the wall_ms column is left empty.
std::string format_sweep_csv(std::span<const SweepRow> rows, bool wall_clock = true);

} // namespace nrow
