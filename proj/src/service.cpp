#include "nrow/service.hpp"

#include <httplib.h>

#include <fstream>
#include <random>
#include <sstream>

namespace nrow {

using nlohmann::json;

ServiceError::ServiceError(std::string code, int http_status, const std::string& detail, std::optional<Point> point)
    : std::runtime_error(detail), code_(std::move(code)), http_status_(http_status), point_(point)
{
}

json ServiceError::to_json() const
{
    json out{{"error", code_}, {"detail", what()}};
    if (point_)
        out["point"] = {point_->x, point_->y};
    return out;
}

namespace {

ServiceError bad_request(const std::string& detail)
{
    return ServiceError("bad_request", 400, detail);
}

const char* color_code(PlayerColor c)
{
    return c == PlayerColor::Red ? "R" : "B";
}

json points_json(const std::vector<Point>& points)
{
    json out = json::array();
    for (const Point& p : points)
        out.push_back({p.x, p.y});
    return out;
}

json move_json(const Move& m)
{
    return {{"turn", m.turn}, {"player", color_code(m.player)}, {"points", points_json(m.points)}};
}

json segment_json(const Segment& s)
{
    return {{"start", {s.start.x, s.start.y}}, {"dir", to_string(s.dir)}, {"len", s.len}};
}

Schedule schedule_from(const json& j)
{
    if (j.is_string())
        return parse_schedule(j.get<std::string>());
    if (j.is_array() && j.size() == 4)
        return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>(),
                j[3].get<std::int64_t>()};
    if (j.is_object())
        return {j.at("evenA").get<std::int64_t>(), j.at("evenB").get<std::int64_t>(), j.at("oddA").get<std::int64_t>(),
                j.at("oddC").get<std::int64_t>()};
    throw std::invalid_argument("schedule must be a string, [a,b,c,d] or {evenA,evenB,oddA,oddC}");
}

std::vector<Point> points_from(const json& request)
{
    if (!request.is_object() || !request.contains("points") || !request["points"].is_array())
        throw bad_request("body must be {\"points\": [[x, y], ...]}");
    std::vector<Point> out;
    for (const auto& p : request["points"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw bad_request("each point must be [x, y] with integer coordinates");
        out.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
    }
    return out;
}

ServiceError from_move_error(const MoveError& e)
{
    switch (e.code()) {
    case MoveErrorCode::Occupied: return ServiceError("occupied", 409, e.what(), e.point());
    case MoveErrorCode::WrongCount: return ServiceError("wrong_count", 400, e.what());
    case MoveErrorCode::Duplicate: return ServiceError("duplicate", 400, e.what(), e.point());
    case MoveErrorCode::GameOver: return ServiceError("not_your_turn", 409, e.what());
    }
    return bad_request(e.what());
}

} // namespace

GameService::GameService(std::optional<std::filesystem::path> transcript_dir)
    : dir_(std::move(transcript_dir)), id_rng_{std::random_device{}()}
{
    if (dir_)
        std::filesystem::create_directories(*dir_);
}

std::string GameService::fresh_id()
{
    std::lock_guard lock(id_mutex_);
    char buf[24];
    std::snprintf(buf, sizeof buf, "g%016llx", static_cast<unsigned long long>(id_rng_.next()));
    return buf;
}

std::size_t GameService::session_count() const
{
    std::shared_lock lock(sessions_mutex_);
    return sessions_.size();
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const
{
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end())
        throw ServiceError("unknown_game", 404, "no game with id '" + id + "'");
    return it->second;
}

std::string GameService::status(const Session& s) const
{
    if (const auto& w = s.state.winner()) {
        if (s.state.config().mode == GameMode::MakerBreaker)
            return "maker_won";
        return w->color == s.human ? "human_won" : "engine_won";
    }
    if (s.state.turn() > s.cap)
        return "capped";
    return "ongoing";
}

json GameService::view(const Session& s) const
{
    const GameState& st = s.state;
    std::vector<std::pair<Point, PlayerColor>> cells;
    for (const auto& [p, cell] : st.board().cells())
        cells.emplace_back(p, cell.color);
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    json cells_json = json::array();
    for (const auto& [p, c] : cells)
        cells_json.push_back({p.x, p.y, color_code(c)});
    json history = json::array();
    for (const Move& m : st.history())
        history.push_back(move_json(m));

    const std::string st_status = status(s);
    json out{{"gameId", s.id},
             {"n", st.n()},
             {"schedule", to_string(st.config().schedule)},
             {"mode", st.config().mode == GameMode::MakerBreaker ? "MB" : "TW"},
             {"humanSide", s.human == PlayerColor::Red ? "maker" : "breaker"},
             {"engine", s.engine_name},
             {"t", st.turn()},
             {"quota", st.quota_now()},
             {"status", st_status},
             {"toMove", st_status != "ongoing" ? "none" : (st.to_move() == s.human ? "human" : "engine")},
             {"cells", cells_json},
             {"history", history}};
    if (const auto& w = st.winner()) {
        out["winner"] = color_code(w->color);
        out["winSegment"] = segment_json(w->segment);
    }
    return out;
}

void GameService::persist_move(const Session& s, const Move& m) const
{
    if (!dir_)
        return;
    std::ofstream(*dir_ / (s.id + ".txt"), std::ios::app) << format_move_line(m) << '\n';
}

void GameService::engine_turn(Session& s, json* engine_move)
{
    if (s.state.over() || s.state.turn() > s.cap || s.state.to_move() == s.human)
        return;
    const auto points = s.engine->choose(s.state, s.state.quota_now());
    s.state.apply(points);
    s.engine->observe(s.state);
    persist_move(s, s.state.history().back());
    if (engine_move)
        *engine_move = move_json(s.state.history().back());
}

json GameService::create_game(const json& request)
{
    if (!request.is_object())
        throw bad_request("body must be a JSON object");
    auto session = std::shared_ptr<Session>();
    std::string engine_name;
    PlayerColor human = PlayerColor::Red;
    std::uint64_t seed = 0;
    std::int64_t cap = 0;
    GameConfig config;
    try {
        config.n = request.at("n").get<std::int64_t>();
        if (request.contains("schedule"))
            config.schedule = schedule_from(request["schedule"]);
        if (request.contains("mode")) {
            const auto mode = request["mode"].get<std::string>();
            if (mode != "MB" && mode != "TW")
                throw std::invalid_argument("mode must be MB or TW");
            config.mode = mode == "MB" ? GameMode::MakerBreaker : GameMode::TwoWinner;
        }
        const auto side = request.at("humanSide").get<std::string>();
        if (side != "maker" && side != "breaker")
            throw std::invalid_argument("humanSide must be maker or breaker");
        human = side == "maker" ? PlayerColor::Red : PlayerColor::Blue;
        engine_name = request.at("engine").get<std::string>();
        if (!is_known_strategy(engine_name))
            throw std::invalid_argument("unknown strategy '" + engine_name + "'");
        seed = request.value("seed", std::uint64_t{0});
        config.validate();
        cap = request.value("cap", 4 * config.n + 4);
        if (cap < 1)
            throw std::invalid_argument("cap must be >= 1");
        session = std::make_shared<Session>(config);
        session->engine = make_strategy(engine_name, opponent(human), config, seed);
    } catch (const ServiceError&) {
        throw;
    } catch (const std::exception& e) {
        throw bad_request(e.what());
    }
    session->id = fresh_id();
    session->human = human;
    session->engine_name = engine_name;
    session->seed = seed;
    session->cap = cap;
    session->created_at = std::chrono::system_clock::now();

    if (dir_) {
        json meta{{"n", config.n},           {"schedule", to_string(config.schedule)},
                  {"mode", config.mode == GameMode::MakerBreaker ? "MB" : "TW"},
                  {"humanSide", human == PlayerColor::Red ? "maker" : "breaker"},
                  {"engine", engine_name}, {"seed", seed},
                  {"cap", cap}};
        std::ofstream(*dir_ / (session->id + ".meta.json")) << meta.dump() << '\n';
        std::ofstream(*dir_ / (session->id + ".txt")) << write_transcript(config, {});
    }

    std::lock_guard lock(session->mutex);
    engine_turn(*session, nullptr);
    {
        std::unique_lock map_lock(sessions_mutex_);
        sessions_.emplace(session->id, session);
    }
    return {{"gameId", session->id}, {"state", view(*session)}};
}

json GameService::submit_move(const std::string& game_id, const json& request)
{
    auto session = find(game_id);
    const auto points = points_from(request);
    std::lock_guard lock(session->mutex);
    Session& s = *session;
    if (status(s) != "ongoing")
        throw ServiceError("not_your_turn", 409, "game is over (" + status(s) + ")");
    if (s.state.to_move() != s.human)
        throw ServiceError("not_your_turn", 409, "it is the engine's turn");
    try {
        s.state.apply(points);
    } catch (const MoveError& e) {
        throw from_move_error(e);
    }
    s.engine->observe(s.state);
    persist_move(s, s.state.history().back());

    json out{{"accepted", true}};
    json engine_move;
    engine_turn(s, &engine_move);
    if (!engine_move.is_null())
        out["engineMove"] = engine_move;
    out["status"] = status(s);
    if (const auto& w = s.state.winner()) {
        out["winner"] = color_code(w->color);
        out["winSegment"] = segment_json(w->segment);
    }
    out["quotaNext"] = s.state.quota_now();
    return out;
}

json GameService::get_state(const std::string& game_id) const
{
    auto session = find(game_id);
    std::lock_guard lock(session->mutex);
    return view(*session);
}

std::size_t GameService::recover()
{
    if (!dir_)
        return 0;
    std::size_t restored = 0;
    for (const auto& entry : std::filesystem::directory_iterator(*dir_)) {
        const auto name = entry.path().filename().string();
        const std::string suffix = ".meta.json";
        if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0)
            continue;
        const std::string id = name.substr(0, name.size() - suffix.size());
        {
            std::shared_lock lock(sessions_mutex_);
            if (sessions_.count(id))
                continue;
        }
        json meta = json::parse(std::ifstream(entry.path()));
        std::ifstream tin(*dir_ / (id + ".txt"));
        std::stringstream text;
        text << tin.rdbuf();
        const Transcript tr = parse_transcript(text.str());

        auto s = std::make_shared<Session>(tr.config);
        s->id = id;
        s->human = meta.at("humanSide").get<std::string>() == "maker" ? PlayerColor::Red : PlayerColor::Blue;
        s->engine_name = meta.at("engine").get<std::string>();
        s->seed = meta.at("seed").get<std::uint64_t>();
        s->cap = meta.at("cap").get<std::int64_t>();
        s->created_at = std::chrono::system_clock::now();
        s->engine = make_strategy(s->engine_name, opponent(s->human), tr.config, s->seed);
        for (const Move& m : tr.moves) {
            if (s->state.to_move() != s->human) {
                // Re-run the engine so its private state (rng, ledger) matches the original session.
                const auto again = s->engine->choose(s->state, s->state.quota_now());
                if (again != m.points)
                    throw std::runtime_error("transcript " + id + ": engine move at turn " + std::to_string(m.turn) +
                                             " does not replay");
            }
            s->state.apply(m.points);
            s->engine->observe(s->state);
        }
        std::unique_lock lock(sessions_mutex_);
        sessions_.emplace(id, std::move(s));
        ++restored;
    }
    return restored;
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

template <class Fn>
void respond(httplib::Response& res, int ok_status, Fn&& fn)
{
    try {
        res.set_content(fn().dump(), "application/json");
        res.status = ok_status;
    } catch (const ServiceError& e) {
        res.set_content(e.to_json().dump(), "application/json");
        res.status = e.http_status();
    } catch (const json::exception& e) {
        res.set_content(ServiceError("bad_request", 400, e.what()).to_json().dump(), "application/json");
        res.status = 400;
    } catch (const std::exception& e) {
        res.set_content(json{{"error", "internal"}, {"detail", e.what()}}.dump(), "application/json");
        res.status = 500;
    }
}

json parse_body(const httplib::Request& req)
{
    try {
        return json::parse(req.body);
    } catch (const json::exception& e) {
        throw bad_request(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace

void install_routes(httplib::Server& server, GameService& service)
{
    server.Post("/games", [&service](const httplib::Request& req, httplib::Response& res) {
        respond(res, 201, [&] { return service.create_game(parse_body(req)); });
    });
    server.Post(R"(/games/([^/]+)/moves)", [&service](const httplib::Request& req, httplib::Response& res) {
        respond(res, 200, [&] { return service.submit_move(req.matches[1], parse_body(req)); });
    });
    server.Get(R"(/games/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
        respond(res, 200, [&] { return service.get_state(req.matches[1]); });
    });
}

} // namespace nrow
