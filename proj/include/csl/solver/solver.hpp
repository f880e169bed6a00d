#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "csl/board.hpp"
#include "csl/errors.hpp"

namespace csl {

enum class Value { WhiteWins, RedWins, Draw };

inline std::string to_string(Value v) {
    switch (v) {
        case Value::WhiteWins: return "WhiteWins";
        case Value::RedWins: return "RedWins";
        case Value::Draw: return "Draw";
    }
    return "?";
}

// Game-theoretic value of a position. plies_to_end counts moves until the game ends
// under optimal play (winner hurries, loser stalls).
struct GameValue {
    Value value = Value::Draw;
    std::optional<int> plies_to_end;

    friend bool operator==(const GameValue&, const GameValue&) = default;
};

struct SolveOptions {
    long long node_budget = 2'000'000;
    bool memoize = true;
};

inline constexpr Value win_value(PieceColor c) noexcept {
    return c == PieceColor::White ? Value::WhiteWins : Value::RedWins;
}

// Exhaustive minimax over legal_moves with check_winner at every node. Refuses (throws
// BudgetExceeded) instead of guessing once the node budget runs out. The memo is keyed
// on the position and side to move only.
class Solver {
public:
    explicit Solver(SolveOptions options = {}) : options_(options) {}

    // The node budget applies to each call; the memo persists across calls.
    GameValue solve(Board board) {
        nodes_ = 0;
        return search(board);
    }

    // Moves whose resulting position keeps the current game value. Empty for terminal
    // positions.
    std::vector<Move> best_moves(Board board) {
        nodes_ = 0;
        const GameValue here = search(board);
        std::vector<Move> out;
        if (board.check_winner().terminal()) return out;
        for (const Move m : board.legal_moves()) {
            board.do_move(m);
            const GameValue child = search(board);
            board.undo_move();
            if (child.value == here.value) out.push_back(m);
        }
        return out;
    }

    // Nodes visited by the last call.
    long long nodes() const noexcept { return nodes_; }

    void reset() {
        nodes_ = 0;
        memo_.clear();
    }

private:
    // Higher is better for `mover`.
    static int utility(const GameValue& v, PieceColor mover) {
        const int plies = v.plies_to_end.value_or(0);
        if (v.value == Value::Draw) return 0;
        return v.value == win_value(mover) ? 100'000 - plies : -100'000 + plies;
    }

    static std::string key_of(const Board& b) {
        const auto cells = b.raw_cells();
        std::string key(cells.begin(), cells.end());
        key.push_back(static_cast<char>(b.to_move()));
        return key;
    }

    GameValue search(Board& b) {
        if (++nodes_ > options_.node_budget) {
            throw BudgetExceeded("instance too large for a node budget of " + std::to_string(options_.node_budget));
        }
        std::string key;
        if (options_.memoize) {
            key = key_of(b);
            if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        }
        GameValue result;
        const Outcome outcome = b.check_winner();
        if (outcome.status == Status::Win) {
            result = {win_value(*outcome.winner), 0};
        } else if (outcome.status == Status::Draw) {
            result = {Value::Draw, 0};
        } else {
            const PieceColor mover = b.to_move();
            bool first = true;
            for (const Move m : b.legal_moves()) {
                b.do_move(m);
                GameValue child = search(b);
                b.undo_move();
                child.plies_to_end = child.plies_to_end.value_or(0) + 1;
                if (first || utility(child, mover) > utility(result, mover)) {
                    result = child;
                    first = false;
                }
            }
        }
        if (options_.memoize) memo_.emplace(std::move(key), result);
        return result;
    }

    SolveOptions options_;
    long long nodes_ = 0;
    std::unordered_map<std::string, GameValue> memo_;
};

inline GameValue solve(const Board& board, SolveOptions options = {}) {
    Solver s(options);
    return s.solve(board);
}

inline std::vector<Move> best_moves(const Board& board, SolveOptions options = {}) {
    Solver s(options);
    return s.best_moves(board);
}

}  // namespace csl
