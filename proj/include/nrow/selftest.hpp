// Exhaustive and randomized consistency checks shared by the CLI `selftest` and the test suites.
#pragma once

#include "nrow/line_cover.hpp"
#include "nrow/strategies.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nrow {

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Every 11-point window in each line direction carries each compass value once or twice, with
/// N, NE, E twice and the rest once.
CheckResult check_compass_windows(const CompassBase& base = kCompassBase);

/// compass_of agrees on [-extent, extent]^2 with the map built from its defining recurrences
/// (the listed row values, period 11 along rows, f(x, y+1) = f(x-3, y)).
CheckResult check_compass_recurrence(const CompassBase& base = kCompassBase, std::int64_t extent = 100);

using LinesThroughFn = std::function<std::vector<LineId>(Point, std::int64_t)>;

/// Degree 8, membership, and local exhaustive agreement for random points.
CheckResult check_cover_degree(std::int64_t samples, std::uint64_t seed, const LinesThroughFn& fn = {});

/// containing_line holds every point of random length-n segments, and is the smaller-j witness.
CheckResult check_cover_containment(std::int64_t samples_per_n, std::uint64_t seed,
                                    const std::vector<std::int64_t>& ns = {4, 10, 57});

/// After Blue takes spoil_targets on a random good line, every length-n window holds a Blue point.
CheckResult check_spoil(std::int64_t samples, std::uint64_t seed);

/// has_win agrees with brute_force_win_scan after every move of random games.
CheckResult check_win_oracle(std::int64_t games, std::uint64_t seed);

std::vector<CheckResult> run_selftest(std::uint64_t seed = 1);

} // namespace nrow
