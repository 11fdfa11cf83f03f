// Interactive play: in-memory sessions of a human against an engine strategy, exposed over HTTP/JSON.
#pragma once

#include "nrow/board.hpp"
#include "nrow/strategies.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace httplib {
class Server;
}

namespace nrow {

/// Client-visible failure: `code` is one of occupied, wrong_count, duplicate, not_your_turn,
/// unknown_game, bad_request.
class ServiceError : public std::runtime_error
{
public:
    ServiceError(std::string code, int http_status, const std::string& detail,
                 std::optional<Point> point = std::nullopt);

    const std::string& code() const noexcept { return code_; }
    int http_status() const noexcept { return http_status_; }
    const std::optional<Point>& point() const noexcept { return point_; }

    nlohmann::json to_json() const;

private:
    std::string code_;
    int http_status_;
    std::optional<Point> point_;
};

class GameService
{
public:
    /// With a directory, every session is persisted as `<id>.meta.json` plus an append-only transcript
    /// `<id>.txt`.
    explicit GameService(std::optional<std::filesystem::path> transcript_dir = std::nullopt);

    /// {n, schedule?, mode?, humanSide: maker|breaker, engine, seed?, cap?} -> {gameId, state}
    nlohmann::json create_game(const nlohmann::json& request);
    /// {points: [[x,y],...]} -> {accepted, engineMove?, status, winner?, winSegment?, quotaNext}
    nlohmann::json submit_move(const std::string& game_id, const nlohmann::json& request);
    nlohmann::json get_state(const std::string& game_id) const;

    /// Rebuilds sessions from the transcript directory by replay; returns how many were restored.
    std::size_t recover();

    std::size_t session_count() const;

private:
    struct Session
    {
        mutable std::mutex mutex;
        std::string id;
        GameState state;
        PlayerColor human = PlayerColor::Red;
        std::string engine_name;
        std::unique_ptr<Strategy> engine;
        std::uint64_t seed = 0;
        std::int64_t cap = 0;
        std::chrono::system_clock::time_point created_at;

        explicit Session(GameConfig config) : state(config) {}
    };

    std::shared_ptr<Session> find(const std::string& id) const;
    nlohmann::json view(const Session& s) const;
    std::string status(const Session& s) const;
    void engine_turn(Session& s, nlohmann::json* engine_move);
    void persist_move(const Session& s, const Move& m) const;
    std::string fresh_id();

    std::optional<std::filesystem::path> dir_;
    mutable std::shared_mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mutex id_mutex_;
    SplitMix64 id_rng_;
};

/// Routes: POST /games, POST /games/{id}/moves, GET /games/{id}.
void install_routes(httplib::Server& server, GameService& service);

} // namespace nrow
