#pragma once

#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <thread>

#include <json.hpp>

#include "csl/agents/human.hpp"
#include "csl/agents/registry.hpp"
#include "csl/match/match_controller.hpp"

namespace csl {

// JSON-text messages, one per frame, tagged by "type".
//
// Client to server:
//   {"type":"NewMatch","white":"human","red":"minimax","white_params":"","red_params":"depth=3",
//    "params":{"rows":6,"cols":7,"win":4,"squares":11,"rounds":10,"time_limit_ms":200}}
//   {"type":"HumanMove","column":3,"shape":"round"}
//   {"type":"Resign"}
// Server to client:
//   {"type":"State", "board", "rows", "cols", "to_move", "turn", "legal_moves", "last_move",
//    "white", "red", "human", "reserves", "outcome":{"status","winner","line","reason","detail"}}
//   {"type":"Thinking","color":"Red","agent":"Minimax(d=3)","info":"nodes=2954"}
//   {"type":"Error","reason":"column out of range"}
//
// The agent name "human" (any case) makes a seat wait for HumanMove frames. Human seats
// are not subject to the time limit.
namespace protocol {

using json = nlohmann::json;

inline json outcome_json(const Outcome& o) {
    json j;
    j["status"] = o.status == Status::InProgress ? "InProgress" : o.status == Status::Draw ? "Draw" : "Win";
    j["winner"] = o.winner ? json(to_string(*o.winner)) : json(nullptr);
    j["line"] = json::array();
    for (const auto& p : o.line) j["line"].push_back({p.row, p.col});
    j["reason"] = nullptr;
    j["detail"] = "";
    return j;
}

inline json reserves_json(const Board& b) {
    json j;
    for (auto color : {PieceColor::White, PieceColor::Red}) {
        j[to_string(color)] = {{"round", b.reserve(color, PieceShape::Round)},
                               {"square", b.reserve(color, PieceShape::Square)}};
    }
    return j;
}

inline std::optional<PieceShape> parse_shape(const std::string& s) {
    const auto low = detail::lower(s);
    if (low == "r" || low == "round") return PieceShape::Round;
    if (low == "s" || low == "square") return PieceShape::Square;
    return std::nullopt;
}

inline GameParams parse_params(const json& j) {
    GameParams p;
    if (j.is_null()) return p;
    if (!j.is_object()) throw InvalidParams("params must be an object");
    auto field = [&](const char* key, int& out) {
        if (auto it = j.find(key); it != j.end()) {
            if (!it->is_number_integer()) throw InvalidParams(std::string(key) + " must be an integer");
            out = it->get<int>();
        }
    };
    field("rows", p.rows);
    field("cols", p.cols);
    field("win", p.win_length);
    field("squares", p.squares);
    field("rounds", p.rounds);
    int limit = static_cast<int>(p.time_limit.count());
    field("time_limit_ms", limit);
    p.time_limit = std::chrono::milliseconds{limit};
    p.validate();
    return p;
}

inline json error(std::string reason) { return {{"type", "Error"}, {"reason", std::move(reason)}}; }

}  // namespace protocol

// Server side of one connection: owns at most one match. Frames go in through
// handle(); replies and match events leave through `send`, which may be called from
// the match thread and is serialized here.
class ProtocolSession {
public:
    using Send = std::function<void(std::string)>;

    ProtocolSession(const AgentRegistry& registry, Send send) : registry_(registry), send_(std::move(send)) {}

    ProtocolSession(const ProtocolSession&) = delete;
    ProtocolSession& operator=(const ProtocolSession&) = delete;

    // Abandons a running match: human seats stop waiting, agents are cancelled.
    ~ProtocolSession() { shutdown(); }

    void handle(std::string_view frame) {
        protocol::json msg;
        try {
            msg = protocol::json::parse(frame);
        } catch (const protocol::json::parse_error&) {
            return reply(protocol::error("malformed message"));
        }
        if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
            return reply(protocol::error("message needs a string \"type\""));
        }
        const auto type = msg["type"].get<std::string>();
        if (type == "NewMatch") return new_match(msg);
        if (type == "HumanMove") return human_move(msg);
        if (type == "Resign") return resign();
        reply(protocol::error("unknown message type '" + type + "'"));
    }

    // Blocks until the match thread (if any) has finished.
    void wait() {
        if (worker_.joinable()) worker_.join();
    }

    void shutdown() {
        abort_.request_stop();
        for (auto& q : queues_) {
            if (q) q->close();
        }
        wait();
    }

private:
    struct Snapshot {
        std::optional<Board> board;
        bool over = false;
        std::array<bool, 2> human{};
        std::array<bool, 2> pending{};  // move handed over, not yet applied
    };

    static std::size_t seat(PieceColor c) { return static_cast<std::size_t>(c); }

    static bool is_human(const std::string& name) { return detail::lower(name) == "human"; }

    void reply(const protocol::json& j) {
        std::lock_guard lock(send_mutex_);
        if (send_) send_(j.dump());
    }

    template <typename T>
    static T optional_field(const protocol::json& msg, const char* key, T fallback) {
        auto it = msg.find(key);
        if (it == msg.end() || it->is_null()) return fallback;
        return it->get<T>();
    }

    void new_match(const protocol::json& msg) {
        {
            std::lock_guard lock(state_mutex_);
            if (started_) return reply(protocol::error("a match was already started on this connection"));
        }
        GameParams params;
        std::array<std::string, 2> names;
        std::array<std::string, 2> agent_params;
        try {
            params = protocol::parse_params(msg.contains("params") ? msg["params"] : protocol::json());
            names = {optional_field<std::string>(msg, "white", "human"), optional_field<std::string>(msg, "red", "minimax")};
            agent_params = {optional_field<std::string>(msg, "white_params", ""),
                            optional_field<std::string>(msg, "red_params", "")};
        } catch (const InvalidParams& e) {
            return reply(protocol::error(e.what()));
        } catch (const protocol::json::exception&) {
            return reply(protocol::error("NewMatch fields have the wrong type"));
        }

        std::array<Seat, 2> seats;
        Snapshot snap;
        const MatchConfig config(params);
        for (std::size_t i = 0; i < 2; ++i) {
            if (is_human(names[i])) {
                queues_[i] = std::make_shared<HumanInputQueue>();
                seats[i] = Seat::of(std::make_shared<HumanThinker>(HumanInputQueue::source(queues_[i])));
                snap.human[i] = true;
                continue;
            }
            if (!registry_.contains(names[i])) {
                queues_ = {};
                return reply(protocol::error("unknown agent '" + names[i] + "'"));
            }
            try {
                seats[i] = Seat::of(registry_.create(names[i], agent_params[i], config));
            } catch (const SetupError& e) {
                seats[i] = Seat::failed(display_name_from(*registry_.resolve(names[i])), e.what());
            }
        }
        snap.board.emplace(params);
        {
            std::lock_guard lock(state_mutex_);
            started_ = true;
            snap_ = snap;
        }

        MatchOptions options;
        options.abort = abort_.get_token();
        worker_ = std::thread([this, params, seats, options]() mutable {
            const std::vector<MatchListener> listeners{[this](const MatchEvent& e) { on_event(e); }};
            try {
                run_match(params, std::move(seats[0]), std::move(seats[1]), listeners, options);
            } catch (const MatchAborted&) {
                // connection gone
            } catch (const std::exception& e) {
                reply(protocol::error(std::string("match failed: ") + e.what()));
            }
        });
    }

    void human_move(const protocol::json& msg) {
        auto column = msg.find("column");
        if (column == msg.end() || !column->is_number_integer()) {
            return reply(protocol::error("HumanMove needs an integer column"));
        }
        auto shape_field = msg.find("shape");
        std::optional<PieceShape> shape;
        if (shape_field != msg.end() && shape_field->is_string()) shape = protocol::parse_shape(shape_field->get<std::string>());
        const Move move{column->get<int>(), shape.value_or(PieceShape::Round)};

        std::lock_guard lock(state_mutex_);
        if (!started_) return reply(protocol::error("no match in progress"));
        if (snap_.over) return reply(protocol::error("match is over"));
        const Board& board = *snap_.board;
        const std::size_t s = seat(board.to_move());
        if (!snap_.human[s]) return reply(protocol::error("not your turn"));
        if (snap_.pending[s]) return reply(protocol::error("move already submitted"));
        if (move.column < 0 || move.column >= board.cols()) return reply(protocol::error("column out of range"));
        if (!shape) return reply(protocol::error("shape must be \"round\" or \"square\""));
        if (auto why = board.illegal_reason(move)) return reply(protocol::error(*why));
        snap_.pending[s] = true;
        queues_[s]->push(move);
    }

    // Resigns for the human seat to move, or the only human seat.
    void resign() {
        std::lock_guard lock(state_mutex_);
        if (!started_) return reply(protocol::error("no match in progress"));
        if (snap_.over) return reply(protocol::error("match is over"));
        std::size_t s = seat(snap_.board->to_move());
        if (!snap_.human[s]) s = 1 - s;
        if (!snap_.human[s]) return reply(protocol::error("no human seat to resign"));
        if (snap_.pending[s]) return reply(protocol::error("move already submitted"));
        snap_.pending[s] = true;
        queues_[s]->push(HumanInputQueue::Resign{});
    }

    protocol::json state_json(const Board& board, const std::optional<PlacedMove>& last, const protocol::json& outcome) {
        protocol::json j;
        j["type"] = "State";
        j["board"] = encode_board(board);
        j["rows"] = board.rows();
        j["cols"] = board.cols();
        j["to_move"] = to_string(board.to_move());
        j["turn"] = board.turn_count();
        j["legal_moves"] = protocol::json::array();
        if (outcome["status"] == "InProgress") {
            for (const Move m : board.legal_moves()) j["legal_moves"].push_back(to_notation(m));
        }
        j["last_move"] = last ? protocol::json{{"column", last->move.column},
                                               {"shape", last->move.shape == PieceShape::Round ? "round" : "square"},
                                               {"row", last->row},
                                               {"notation", to_notation(last->move)}}
                              : protocol::json(nullptr);
        j["white"] = names_[0];
        j["red"] = names_[1];
        j["human"] = protocol::json::array();
        for (auto c : {PieceColor::White, PieceColor::Red}) {
            if (snap_.human[seat(c)]) j["human"].push_back(to_string(c));
        }
        j["reserves"] = protocol::reserves_json(board);
        j["outcome"] = outcome;
        return j;
    }

    void on_event(const MatchEvent& event) {
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, MatchStart>) {
                    std::lock_guard lock(state_mutex_);
                    names_ = {e.white_name, e.red_name};
                    last_.reset();
                    reply(state_json(*snap_.board, last_, protocol::outcome_json(Outcome::in_progress())));
                } else if constexpr (std::is_same_v<T, BoardUpdated>) {
                    std::lock_guard lock(state_mutex_);
                    snap_.board = e.board;
                    snap_.pending = {};
                    last_ = e.last;
                    // a deciding move is reported once, by the final state
                    if (!e.board.check_winner().terminal()) {
                        reply(state_json(e.board, last_, protocol::outcome_json(Outcome::in_progress())));
                    }
                } else if constexpr (std::is_same_v<T, ThinkingInfo>) {
                    reply({{"type", "Thinking"}, {"color", to_string(e.color)}, {"agent", e.agent}, {"info", e.text}});
                } else if constexpr (std::is_same_v<T, MatchEnd>) {
                    std::lock_guard lock(state_mutex_);
                    snap_.over = true;
                    const auto& r = e.result;
                    protocol::json outcome;
                    outcome["status"] = r.winner ? "Win" : (r.reason == EndReason::Draw ? "Draw" : "NoResult");
                    outcome["winner"] = r.winner ? protocol::json(to_string(*r.winner)) : protocol::json(nullptr);
                    outcome["line"] = protocol::json::array();
                    for (const auto& p : r.winning_line) outcome["line"].push_back({p.row, p.col});
                    outcome["reason"] = to_string(r.reason);
                    outcome["detail"] = r.detail;
                    reply(state_json(*snap_.board, last_, outcome));
                }
            },
            event.payload);
    }

    const AgentRegistry& registry_;
    std::mutex send_mutex_;
    Send send_;

    std::mutex state_mutex_;
    bool started_ = false;
    Snapshot snap_;
    std::array<std::string, 2> names_;
    std::optional<PlacedMove> last_;
    std::array<std::shared_ptr<HumanInputQueue>, 2> queues_;

    std::stop_source abort_;
    std::thread worker_;
};

}  // namespace csl
