// Exact minimax for the two-winner game with the identity schedule on a locally restricted board.
//
// Both players may only claim points within Chebyshev distance min(radius, n) of a claimed point
// (of the origin on an empty board). Positions are memoized up to translation and the 8 lattice
// symmetries. The search deepens a horizon H = 1, 2, ...; at each H it asks whether the player who
// moves at turn H can force a win by then. The first such H is the optimal-play win turn of the
// restricted game.
#pragma once

#include "nrow/board.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nrow {

enum class Seat : std::uint8_t { First, Second };

const char* to_string(Seat s) noexcept;

struct SolverVerdict
{
    std::int64_t n = 0;
    Seat winner = Seat::First;
    std::int64_t win_turn = 0;
    std::vector<Move> principal_variation;
    std::int64_t search_radius = 0;
    std::int64_t nodes_expanded = 0;
    std::string exactness_note;
};

struct SolverInconclusive
{
    std::int64_t n = 0;
    std::int64_t search_radius = 0;
    std::int64_t nodes_expanded = 0;
    std::int64_t horizon_reached = 0;  ///< last horizon fully refuted before the cap hit
    std::string reason;
};

using SolveResult = std::variant<SolverVerdict, SolverInconclusive>;

struct SolverOptions
{
    std::int64_t radius = 0;  ///< 0 means n
    std::int64_t node_cap = 50'000'000;
    bool memoize = true;
};

/// Config of the solved game: identity schedule, two-winner rules.
GameConfig solver_config(std::int64_t n);

/// Canonical form of a position under translation and the dihedral group of the lattice.
using CanonicalKey = std::vector<std::int64_t>;
CanonicalKey canonical_key(const GameState& state);

/// Unclaimed points within Chebyshev distance min(radius, n) of a claimed point (of the origin on an
/// empty board), grown by 1 until it holds at least `quota` points. Sorted by (x, y).
std::vector<Point> relevance_region(const GameState& state, std::int64_t radius, std::int64_t quota);

/// All quota-subsets of the region in lexicographic order, keeping the first of each canonical class.
std::vector<std::vector<Point>> candidate_moves(const GameState& state, std::int64_t radius);

SolveResult solve(std::int64_t n, const SolverOptions& options = {});

/// Replays the principal variation; true iff it is legal and the stated seat wins at win_turn.
bool verify_variation(const SolverVerdict& verdict);

/// Header `n=.. winner=first|second win_turn=.. radius=.. nodes=..` followed by the variation transcript.
std::string format_verdict(const SolverVerdict& verdict);

/// Winner of the unrestricted game for small n as reported in the literature (n = 1..7).
std::optional<Seat> known_winner(std::int64_t n) noexcept;

} // namespace nrow
