#include "support.hpp"

#include "nrow/board.hpp"

#include <doctest.h>

#include <cmath>

using namespace nrow;

namespace {

GameState play(GameConfig config, std::initializer_list<std::vector<Point>> moves)
{
    GameState s(config);
    for (const auto& m : moves)
        s.apply(m);
    return s;
}

// Red claims `red` one point per Red turn under const:1, Blue answers far away.
GameState red_points(std::int64_t n, const std::vector<Point>& red)
{
    GameState s(GameConfig{n, Schedule::constant(1), GameMode::MakerBreaker});
    std::int64_t far = 1000;
    for (std::size_t i = 0; i < red.size(); ++i) {
        s.apply(std::vector<Point>{red[i]});
        if (i + 1 < red.size() && !s.over())
            s.apply(std::vector<Point>{Point{far += 7, 1000}});
    }
    return s;
}

} // namespace

TEST_CASE("quota follows the per-parity affine rule")
{
    CHECK(quota(Schedule::identity(), 7) == 7);
    CHECK(quota(Schedule::constant(1), 9) == 1);
    CHECK(quota(Schedule::constant(3), 2) == 3);
    for (std::int64_t t = 1; t <= 50; ++t)
        CHECK(quota(Schedule::identity(), t) == t);
    CHECK_THROWS_AS(quota(Schedule::identity(), 0), std::invalid_argument);
}

TEST_CASE("cumulative maker quota")
{
    CHECK(cumulative_maker_quota(Schedule::identity(), 5) == 9);
    CHECK(cumulative_maker_quota(Schedule::identity(), 2) == 1);
    CHECK(cumulative_maker_quota(Schedule::constant(1), 9) == 5);

    // Summing quota over odd turns.
    for (Schedule sch : {Schedule::identity(), Schedule::constant(2), Schedule{1, 3, 3, 0}, Schedule{0, 1, 100, 4}}) {
        std::int64_t sum = 0;
        for (std::int64_t t = 1; t <= 60; ++t) {
            if (t % 2 == 1)
                sum += quota(sch, t);
            CHECK(cumulative_maker_quota(sch, t) == sum);
        }
    }
}

TEST_CASE("schedule parsing and validation")
{
    CHECK(parse_schedule("identity") == Schedule::identity());
    CHECK(parse_schedule("const:4") == Schedule::constant(4));
    CHECK(parse_schedule("1,2,3,4") == Schedule{1, 2, 3, 4});
    CHECK(to_string(Schedule::identity()) == "2,0,2,1");
    CHECK_THROWS(parse_schedule("1,2,3"));
    CHECK_THROWS(parse_schedule("const:x"));
    CHECK_THROWS(Schedule{-1, 0, 2, 1}.validate());
    CHECK_THROWS(Schedule{2, 0, 0, 0}.validate());
    CHECK_THROWS(GameConfig{0, Schedule::identity(), GameMode::MakerBreaker}.validate());
}

TEST_CASE("apply_move examples")
{
    const GameConfig mb{2, Schedule::identity(), GameMode::MakerBreaker};
    const GameConfig tw{2, Schedule::identity(), GameMode::TwoWinner};

    SUBCASE("first move")
    {
        GameState s = apply_move(GameState(mb), std::vector<Point>{{0, 0}});
        CHECK(s.color_at({0, 0}) == PlayerColor::Red);
        CHECK(s.turn() == 2);
        CHECK_FALSE(s.over());
    }
    SUBCASE("Blue wins in the two-winner game")
    {
        GameState s = play(tw, {{{0, 0}}, {{5, 5}, {6, 5}}});
        REQUIRE(s.winner());
        CHECK(s.winner()->color == PlayerColor::Blue);
        CHECK(s.winner()->turn == 2);
        CHECK(s.winner()->segment == Segment{{5, 5}, LineDir4::E, 2});
    }
    SUBCASE("Blue cannot win in the Maker-Breaker game")
    {
        GameState s = play(mb, {{{0, 0}}, {{5, 5}, {6, 5}}});
        CHECK_FALSE(s.over());
    }
    SUBCASE("duplicate point")
    {
        GameState s(GameConfig{3, Schedule::identity(), GameMode::MakerBreaker});
        s.apply(std::vector<Point>{{1, 1}});
        try {
            s.apply(std::vector<Point>{{0, 0}, {0, 0}});
            FAIL("expected MoveError");
        } catch (const MoveError& e) {
            CHECK(e.code() == MoveErrorCode::Duplicate);
            CHECK(e.point() == Point{0, 0});
        }
        CHECK(s.turn() == 2);
    }
    SUBCASE("occupied point")
    {
        GameState s = play(mb, {{{0, 0}}});
        try {
            s.apply(std::vector<Point>{{1, 0}, {0, 0}});
            FAIL("expected MoveError");
        } catch (const MoveError& e) {
            CHECK(e.code() == MoveErrorCode::Occupied);
            CHECK(e.point() == Point{0, 0});
        }
        CHECK(s.claimed_count() == 1);
        CHECK_FALSE(s.is_claimed({1, 0}));
    }
    SUBCASE("wrong count")
    {
        GameState s(mb);
        CHECK_THROWS_AS(s.apply(std::vector<Point>{{0, 0}, {1, 0}}), MoveError);
        CHECK_THROWS_AS(s.apply(std::vector<Point>{}), MoveError);
        CHECK(s.turn() == 1);
    }
    SUBCASE("no moves after a win")
    {
        GameState s(GameConfig{1, Schedule::identity(), GameMode::MakerBreaker});
        s.apply(std::vector<Point>{{3, 4}});
        REQUIRE(s.over());
        try {
            s.apply(std::vector<Point>{{0, 0}, {1, 0}});
            FAIL("expected MoveError");
        } catch (const MoveError& e) {
            CHECK(e.code() == MoveErrorCode::GameOver);
        }
    }
}

TEST_CASE("has_win examples")
{
    CHECK(has_win(red_points(5, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}), PlayerColor::Red) ==
          Segment{{0, 0}, LineDir4::E, 5});
    CHECK_FALSE(has_win(red_points(5, {{0, 0}, {1, 0}, {2, 0}, {3, 0}}), PlayerColor::Red));
    CHECK(has_win(red_points(3, {{0, 0}, {1, 1}, {2, 2}}), PlayerColor::Red) == Segment{{0, 0}, LineDir4::NE, 3});
    CHECK(has_win(red_points(3, {{0, 2}, {1, 1}, {2, 0}}), PlayerColor::Red) == Segment{{0, 2}, LineDir4::SE, 3});
    CHECK(has_win(red_points(3, {{4, 0}, {4, 2}, {4, 1}}), PlayerColor::Red) == Segment{{4, 0}, LineDir4::N, 3});
    // Merging two runs through the middle point.
    CHECK(has_win(red_points(5, {{0, 0}, {1, 0}, {3, 0}, {4, 0}, {2, 0}}), PlayerColor::Red) ==
          Segment{{0, 0}, LineDir4::E, 5});
}

TEST_CASE("brute force scan examples")
{
    GameState empty(GameConfig{3, Schedule::identity(), GameMode::MakerBreaker});
    CHECK_FALSE(brute_force_win_scan(empty, PlayerColor::Red));
    for (std::int64_t n = 2; n <= 6; ++n)
        CHECK_FALSE(brute_force_win_scan(red_points(n, {{-7, 3}}), PlayerColor::Red));
}

TEST_CASE("winner is the least window of the least long run")
{
    // A run of 7 with n = 5 reports its first window; among runs the lexicographically least start wins.
    GameState s(GameConfig{5, Schedule::constant(10), GameMode::MakerBreaker});
    s.apply(std::vector<Point>{{3, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}, {0, 9}, {0, 10}, {0, 11}, {0, 12}, {0, 13}});
    REQUIRE(s.winner());
    CHECK(s.winner()->segment == Segment{{0, 9}, LineDir4::N, 5});

    GameState r(GameConfig{5, Schedule::constant(7), GameMode::MakerBreaker});
    r.apply(std::vector<Point>{{3, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}, {8, 0}, {9, 0}});
    REQUIRE(r.winner());
    CHECK(r.winner()->segment == Segment{{3, 0}, LineDir4::E, 5});
}

TEST_CASE("run index keeps exact lengths at run endpoints")
{
    SplitMix64 rng{11};
    for (int game = 0; game < 60; ++game) {
        const std::int64_t n = 4 + static_cast<std::int64_t>(rng.below(4));
        GameState s(GameConfig{n, Schedule::constant(3), GameMode::TwoWinner});
        for (int turn = 0; turn < 30 && !s.over(); ++turn) {
            s.apply(testing::random_move(s, 3, rng, testing::box_for(s, 3)));
            const auto b = testing::board_map(s);
            for (const auto& [p, c] : b)
                for (auto d : kLineDirs) {
                    const Point st = step(d);
                    auto prev = b.find(p - st);
                    const bool endpoint = prev == b.end() || prev->second != c;
                    if (endpoint)
                        CHECK(s.board().stored_run(p, d) == testing::ray_run(b, p, st, c));
                }
        }
    }
}

TEST_CASE("has_win agrees with ray oracle and brute force on random games")
{
    SplitMix64 rng{2024};
    for (int game = 0; game < 300; ++game) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.below(6));
        const Schedule sch{static_cast<std::int64_t>(rng.below(3)), 1 + static_cast<std::int64_t>(rng.below(3)),
                           static_cast<std::int64_t>(rng.below(3)), 1 + static_cast<std::int64_t>(rng.below(3))};
        const GameMode mode = rng.below(2) ? GameMode::TwoWinner : GameMode::MakerBreaker;
        GameState s(GameConfig{n, sch, mode});
        for (int turn = 0; turn < 12 && !s.over(); ++turn) {
            const auto q = s.quota_now();
            s.apply(testing::random_move(s, q, rng, testing::box_for(s, q)));
            for (PlayerColor c : {PlayerColor::Red, PlayerColor::Blue}) {
                const auto fast = s.has_win(c);
                CHECK(fast == brute_force_win_scan(s, c));
                CHECK(fast.has_value() == testing::naive_has_win(s, c));
            }
        }
    }
}

TEST_CASE("claimed cells match the cumulative quota")
{
    SplitMix64 rng{5};
    GameState s(GameConfig{50, Schedule{1, 2, 2, 1}, GameMode::MakerBreaker});
    std::int64_t expected = 0;
    for (int turn = 0; turn < 20; ++turn) {
        const auto q = s.quota_now();
        expected += q;
        s.apply(testing::random_move(s, q, rng, testing::box_for(s, q)));
        CHECK(static_cast<std::int64_t>(s.claimed_count()) == expected);
        CHECK(s.history().back().player == (s.history().back().turn % 2 ? PlayerColor::Red : PlayerColor::Blue));
    }
}

TEST_CASE("transcript round trip")
{
    SplitMix64 rng{77};
    for (int game = 0; game < 40; ++game) {
        const GameConfig config{1 + static_cast<std::int64_t>(rng.below(8)), Schedule{1, 1, 2, 1},
                                game % 2 ? GameMode::TwoWinner : GameMode::MakerBreaker};
        GameState s(config);
        for (int turn = 0; turn < 8 && !s.over(); ++turn) {
            const auto q = s.quota_now();
            s.apply(testing::random_move(s, q, rng, testing::box_for(s, q) + 20));
        }
        const auto text = write_transcript(config, s.history());
        const auto parsed = parse_transcript(text);
        CHECK(parsed.config == config);
        CHECK(parsed.moves == s.history());
        const GameState again = replay(parsed);
        CHECK(again.winner() == s.winner());
        CHECK(write_transcript(again.config(), again.history()) == text);
    }
    CHECK(write_transcript(GameConfig{3, Schedule::identity(), GameMode::TwoWinner},
                           std::vector<Move>{{1, PlayerColor::Red, {{0, 0}}}, {2, PlayerColor::Blue, {{-1, 2}, {4, 5}}}}) ==
          "n=3 schedule=2,0,2,1 mode=TW\nt=1 0,0\nt=2 -1,2 4,5\n");
    CHECK_THROWS(parse_transcript("n=3 schedule=identity\n"));
    CHECK_THROWS(parse_transcript("n=3 schedule=2,0,2,1 mode=MB\nt=1 0;0\n"));
    CHECK_THROWS_AS(replay(parse_transcript("n=3 schedule=2,0,2,1 mode=MB\nt=1 0,0\nt=2 0,0 1,1\n")), MoveError);
}

TEST_CASE("maker wins respect the counting bound")
{
    // Under the identity schedule Red holds ((t+1)/2)^2 points after turn t, so a win needs t >= 2*sqrt(n) - 1.
    SplitMix64 rng{9};
    for (int game = 0; game < 200; ++game) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.below(9));
        GameState s(GameConfig{n, Schedule::identity(), GameMode::MakerBreaker});
        while (!s.over() && s.turn() < 12) {
            const auto q = s.quota_now();
            std::vector<Point> pts;
            if (s.to_move() == PlayerColor::Red) {
                // Red piles onto row 0 near the origin to make wins likely.
                for (std::int64_t x = 0; static_cast<std::int64_t>(pts.size()) < q; ++x)
                    for (Point p : {Point{x, 0}, Point{-x - 1, 0}})
                        if (!s.is_claimed(p) && static_cast<std::int64_t>(pts.size()) < q)
                            pts.push_back(p);
            } else {
                pts = testing::random_move(s, q, rng, testing::box_for(s, q));
            }
            s.apply(pts);
        }
        if (s.winner()) {
            const auto t = s.winner()->turn;
            CHECK(cumulative_maker_quota(s.config().schedule, t) >= n);
            CHECK(t >= 2 * static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n)))) - 1);
        }
    }
}
