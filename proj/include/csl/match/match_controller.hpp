#pragma once

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <thread>

#include "csl/agents/human.hpp"
#include "csl/agents/thinker.hpp"
#include "csl/board.hpp"
#include "csl/board_text.hpp"
#include "csl/match/events.hpp"
#include "csl/match/match_result.hpp"

namespace csl {

// One side of a match: a configured agent, or the record of its failed setup.
struct Seat {
    std::shared_ptr<Thinker> agent;
    std::string name;
    std::optional<std::string> setup_error;

    static Seat of(std::shared_ptr<Thinker> agent) {
        Seat s;
        s.name = agent->name();
        s.agent = std::move(agent);
        return s;
    }

    static Seat failed(std::string name, std::string error) {
        Seat s;
        s.name = std::move(name);
        s.setup_error = std::move(error);
        return s;
    }
};

struct MatchOptions {
    // Overrides the default grace window after cancellation.
    std::optional<std::chrono::milliseconds> grace;
    // Requests the match to stop; run_match then throws MatchAborted.
    std::stop_token abort;
};

class MatchAborted : public Error {
public:
    MatchAborted() : Error("match aborted") {}
};

// Time an agent gets to unwind after cancellation before it is abandoned. A move
// delivered inside this window still loses on time.
inline std::chrono::milliseconds grace_window(std::chrono::milliseconds time_limit) {
    return std::max(std::chrono::milliseconds{50}, time_limit / 10);
}

namespace detail {

struct ThinkChannel {
    std::mutex mutex;
    std::condition_variable cv;
    std::deque<std::string> infos;
    bool done = false;
    FutureMove move;
    std::exception_ptr error;
    std::chrono::steady_clock::time_point finished;
};

enum class TurnStatus { Decided, NoMove, Exception, Resigned, Timeout };

struct TurnResult {
    TurnStatus status = TurnStatus::NoMove;
    FutureMove move;
    std::string detail;
    std::chrono::microseconds elapsed{0};
};

template <typename OnInfo>
TurnResult think_turn(Thinker& agent, const std::shared_ptr<Thinker>& owner, const Board& board,
                      std::chrono::milliseconds time_limit, std::chrono::milliseconds grace,
                      const std::stop_token& abort, OnInfo&& on_info) {
    using clock = std::chrono::steady_clock;
    auto channel = std::make_shared<ThinkChannel>();
    std::stop_source cancel;

    agent.set_thinking_listener([channel](std::string_view text) {
        {
            std::lock_guard lock(channel->mutex);
            channel->infos.emplace_back(text);
        }
        channel->cv.notify_all();
    });

    std::stop_callback on_abort(abort, [&cancel, channel] {
        cancel.request_stop();
        { std::lock_guard lock(channel->mutex); }
        channel->cv.notify_all();
    });

    const auto start = clock::now();
    // the worker owns everything it touches, so it can be abandoned safely
    std::thread worker([channel, owner, copy = board, token = cancel.get_token()]() mutable {
        FutureMove move;
        std::exception_ptr error;
        try {
            move = owner->think(copy, token);
        } catch (...) {
            error = std::current_exception();
        }
        {
            std::lock_guard lock(channel->mutex);
            channel->move = move;
            channel->error = error;
            channel->done = true;
            channel->finished = clock::now();
        }
        channel->cv.notify_all();
    });

    std::unique_lock lock(channel->mutex);
    auto drain = [&] {
        while (!channel->infos.empty()) {
            std::string text = std::move(channel->infos.front());
            channel->infos.pop_front();
            lock.unlock();
            on_info(text);
            lock.lock();
        }
    };

    const bool timed = agent.timed();
    const auto soft_deadline = start + time_limit;
    while (true) {
        drain();
        if (channel->done || cancel.stop_requested()) break;
        if (timed) {
            if (clock::now() >= soft_deadline) break;
            channel->cv.wait_until(lock, soft_deadline);
        } else {
            channel->cv.wait(lock);
        }
    }
    if (!channel->done) {
        cancel.request_stop();
        const auto hard_deadline = clock::now() + grace;
        while (!channel->done && clock::now() < hard_deadline) {
            channel->cv.wait_until(lock, hard_deadline);
            drain();
        }
    }
    drain();

    TurnResult turn;
    const bool done = channel->done;
    turn.elapsed = std::chrono::duration_cast<std::chrono::microseconds>((done ? channel->finished : clock::now()) - start);
    const bool on_time = done && (!timed || channel->finished <= soft_deadline);
    FutureMove move = channel->move;
    std::exception_ptr error = channel->error;
    lock.unlock();

    if (done) {
        worker.join();
        agent.set_thinking_listener(nullptr);
    } else {
        worker.detach();  // runaway agent: abandoned, never reused
    }

    if (abort.stop_requested()) throw MatchAborted();
    if (!on_time) {
        turn.status = TurnStatus::Timeout;
        turn.detail = done ? "move delivered after the time limit" : "no response before the hard deadline";
        return turn;
    }
    if (error) {
        try {
            std::rethrow_exception(error);
        } catch (const Resignation&) {
            turn.status = TurnStatus::Resigned;
        } catch (const std::exception& e) {
            turn.status = TurnStatus::Exception;
            turn.detail = e.what();
        } catch (...) {
            turn.status = TurnStatus::Exception;
            turn.detail = "unknown exception";
        }
        return turn;
    }
    if (!move) {
        turn.status = TurnStatus::NoMove;
        turn.detail = "no move returned";
        return turn;
    }
    turn.status = TurnStatus::Decided;
    turn.move = move;
    return turn;
}

}  // namespace detail

// Plays one match. White moves first; every turn runs the agent on its own thread
// against a board copy, raises cancellation at the time limit and abandons the agent
// after the grace window. Loss conditions (exception, timeout, invalid move, failed
// setup, resignation) end the match as results. Listeners see the full event stream.
inline MatchResult run_match(const GameParams& params, Seat white, Seat red,
                             std::span<const MatchListener> listeners = {}, const MatchOptions& options = {}) {
    params.validate();
    Board board(params);
    MatchResult result;
    result.white_name = white.name;
    result.red_name = red.name;

    auto emit = [&](auto payload) {
        MatchEvent event{std::chrono::steady_clock::now(), std::move(payload)};
        for (const auto& listener : listeners) {
            if (listener) listener(event);
        }
    };
    auto finish = [&](std::optional<PieceColor> winner, EndReason reason, std::string detail = {}) {
        result.winner = winner;
        result.reason = reason;
        result.detail = std::move(detail);
        result.final_board = encode_board(board);
        emit(MatchEnd{result});
        return result;
    };

    emit(MatchStart{params, white.name, red.name});

    if (white.setup_error && red.setup_error) {
        return finish(std::nullopt, EndReason::OpponentSetupFailure,
                      "both agents failed setup: " + *white.setup_error + "; " + *red.setup_error);
    }
    if (white.setup_error) return finish(PieceColor::Red, EndReason::OpponentSetupFailure, *white.setup_error);
    if (red.setup_error) return finish(PieceColor::White, EndReason::OpponentSetupFailure, *red.setup_error);

    const auto grace = options.grace.value_or(grace_window(params.time_limit));
    while (true) {
        Outcome outcome = board.check_winner();
        if (outcome.status == Status::Win) {
            result.winning_line = outcome.line;
            return finish(outcome.winner, EndReason::LineWin);
        }
        if (outcome.status == Status::Draw) return finish(std::nullopt, EndReason::Draw);
        if (options.abort.stop_requested()) throw MatchAborted();

        const PieceColor color = board.to_move();
        Seat& seat = color == PieceColor::White ? white : red;
        const PieceColor other = opponent(color);

        auto turn = detail::think_turn(*seat.agent, seat.agent, board, params.time_limit, grace, options.abort,
                                       [&](const std::string& text) { emit(ThinkingInfo{color, seat.name, text}); });
        switch (turn.status) {
            case detail::TurnStatus::Timeout: return finish(other, EndReason::OpponentTimeout, turn.detail);
            case detail::TurnStatus::Exception: return finish(other, EndReason::OpponentException, turn.detail);
            case detail::TurnStatus::Resigned: return finish(other, EndReason::OpponentResigned);
            case detail::TurnStatus::NoMove: return finish(other, EndReason::OpponentInvalidMove, turn.detail);
            case detail::TurnStatus::Decided: break;
        }
        const Move move = *turn.move;
        if (auto why = board.illegal_reason(move)) {
            return finish(other, EndReason::OpponentInvalidMove, *why + " (" + to_notation(move) + ")");
        }
        const int row = board.do_move(move);
        result.transcript.push_back({move, row, turn.elapsed});
        emit(MoveChosen{color, seat.name, move, turn.elapsed});
        emit(BoardUpdated{board, {move, row}});
    }
}

inline MatchResult run_match(const GameParams& params, std::shared_ptr<Thinker> white, std::shared_ptr<Thinker> red,
                             std::span<const MatchListener> listeners = {}, const MatchOptions& options = {}) {
    return run_match(params, Seat::of(std::move(white)), Seat::of(std::move(red)), listeners, options);
}

}  // namespace csl
