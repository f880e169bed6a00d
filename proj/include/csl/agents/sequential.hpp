#pragma once

#include "csl/agents/thinker.hpp"

namespace csl {

// Plays columns in cyclic order, skipping full ones. Uses its winning shape until that
// runs out, then the other shape. Not really an AI; a fixed reference opponent.
class SequentialThinker : public Thinker {
public:
    FutureMove think(Board& board, CancellationToken cancel) override {
        if (cancel.stop_requested()) return kNoMove;
        const int cols = board.cols();
        for (int step = 0; step < cols; ++step) {
            const int col = (next_column_ + step) % cols;
            if (board.column_full(col)) continue;
            const PieceColor me = board.to_move();
            PieceShape shape = winning_shape(me);
            if (board.reserve(me, shape) == 0) shape = other_shape(shape);
            next_column_ = (col + 1) % cols;
            return Move{col, shape};
        }
        return kNoMove;
    }

    bool isolated() const override { return true; }

private:
    int next_column_ = 0;
};

}  // namespace csl
