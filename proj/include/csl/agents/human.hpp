#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <istream>
#include <memory>
#include <mutex>
#include <ostream>
#include <variant>

#include "csl/agents/thinker.hpp"

namespace csl {

// Thrown from a human seat's think() when the player gives up.
class Resignation : public std::exception {
public:
    const char* what() const noexcept override { return "resigned"; }
};

// A seat driven by a person. Not subject to the move time limit.
class HumanThinker : public Thinker {
public:
    using MoveSource = std::function<FutureMove(const Board&, CancellationToken)>;

    explicit HumanThinker(MoveSource source) : source_(std::move(source)) { set_registry_name("Human"); }

    FutureMove think(Board& board, CancellationToken cancel) override { return source_(board, cancel); }

    bool timed() const override { return false; }

private:
    MoveSource source_;
};

// Prompts on `out` and reads move notation lines from `in`, re-prompting on bad
// input. End of input yields no move.
inline HumanThinker::MoveSource console_move_source(std::istream& in, std::ostream& out) {
    return [&in, &out](const Board& board, CancellationToken cancel) -> FutureMove {
        std::string line;
        while (!cancel.stop_requested()) {
            out << "column shape> " << std::flush;
            if (!std::getline(in, line)) return kNoMove;
            const auto move = parse_move(line);
            if (!move) {
                out << "expected move notation such as 3r or 0s\n";
                continue;
            }
            if (auto why = board.illegal_reason(*move)) {
                out << "illegal move: " << *why << "\n";
                continue;
            }
            return move;
        }
        return kNoMove;
    };
}

// Hand-off point between a network connection and a human seat: the connection pushes
// moves (or a resignation), the seat's think() blocks on pop().
class HumanInputQueue {
public:
    struct Resign {};
    using Item = std::variant<Move, Resign>;

    void push(Item item) {
        {
            std::lock_guard lock(mutex_);
            items_.push_back(item);
        }
        cv_.notify_all();
    }

    void close() {
        {
            std::lock_guard lock(mutex_);
            closed_ = true;
        }
        cv_.notify_all();
    }

    // Blocks until an item arrives, the queue closes or `cancel` fires.
    std::optional<Item> pop(CancellationToken cancel) {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, cancel, [&] { return !items_.empty() || closed_; });
        if (items_.empty()) return std::nullopt;
        Item item = items_.front();
        items_.pop_front();
        return item;
    }

    static HumanThinker::MoveSource source(std::shared_ptr<HumanInputQueue> queue) {
        return [queue = std::move(queue)](const Board&, CancellationToken cancel) -> FutureMove {
            auto item = queue->pop(cancel);
            if (!item) return kNoMove;
            if (std::holds_alternative<Resign>(*item)) throw Resignation{};
            return std::get<Move>(*item);
        };
    }

private:
    std::mutex mutex_;
    std::condition_variable_any cv_;
    std::deque<Item> items_;
    bool closed_ = false;
};

}  // namespace csl
