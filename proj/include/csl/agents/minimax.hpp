#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "csl/agents/thinker.hpp"

namespace csl {

// Weight of each cell (row-major from the bottom row): 1 at the geometric centre of the
// grid falling linearly to 0 at the farthest cell. A 1x1 grid weighs 1.
inline std::vector<double> centrality_weights(int rows, int cols) {
    const double cr = (rows - 1) / 2.0;
    const double cc = (cols - 1) / 2.0;
    const double maxdist = std::hypot(cr, cc);
    std::vector<double> w(static_cast<std::size_t>(rows * cols));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double d = std::hypot(r - cr, c - cc);
            w[static_cast<std::size_t>(r * cols + c)] = maxdist > 0 ? 1.0 - d / maxdist : 1.0;
        }
    }
    return w;
}

// Each piece adds its cell weight once for every attribute (color, shape) it shares with
// `me`'s winning conditions and subtracts it once for every attribute serving the
// opponent. A piece is therefore worth +2, 0 or -2 times its centrality.
inline double centrality_score(const Board& board, PieceColor me, const std::vector<double>& weights) {
    double score = 0.0;
    const auto cells = board.raw_cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::uint8_t cell = cells[i];
        if (cell == 0) continue;
        const auto color = static_cast<PieceColor>((cell - 1) / 2);
        const auto shape = static_cast<PieceShape>((cell - 1) % 2);
        const int sign = (color == me ? 1 : -1) + (shape == winning_shape(me) ? 1 : -1);
        score += sign * weights[i];
    }
    return score;
}

inline double centrality_score(const Board& board, PieceColor me) {
    return centrality_score(board, me, centrality_weights(board.rows(), board.cols()));
}

struct MinimaxResult {
    FutureMove move;
    double score = 0.0;
    long long nodes = 0;
    bool cancelled = false;
};

// Plain depth-limited minimax, no pruning, from the point of view of the side to move.
// Wins score +inf, losses -inf, draws 0; non-terminal leaves use centrality_score. Ties
// go to the earliest move in legal_moves order. On cancellation the best fully searched
// root move is returned (kNoMove if none finished).
class MinimaxSearch {
public:
    explicit MinimaxSearch(std::vector<double> weights) : weights_(std::move(weights)) {}

    MinimaxResult run(Board& board, int depth, CancellationToken cancel) {
        MinimaxResult result;
        nodes_ = 0;
        me_ = board.to_move();
        cancel_ = cancel;
        double best = -kInf;
        for (const Move m : board.legal_moves()) {
            if (cancel_.stop_requested()) {
                result.cancelled = true;
                break;
            }
            board.do_move(m);
            const auto value = evaluate(board, depth - 1);
            board.undo_move();
            if (!value) {
                result.cancelled = true;
                break;
            }
            if (!result.move || *value > best) {
                result.move = m;
                best = *value;
            }
        }
        result.score = best;
        result.nodes = nodes_;
        return result;
    }

    static constexpr double kInf = std::numeric_limits<double>::infinity();

private:
    std::optional<double> evaluate(Board& board, int depth) {
        ++nodes_;
        if (cancel_.stop_requested()) return std::nullopt;
        const Outcome outcome = board.check_winner();
        if (outcome.status == Status::Win) return *outcome.winner == me_ ? kInf : -kInf;
        if (outcome.status == Status::Draw) return 0.0;
        if (depth <= 0) return centrality_score(board, me_, weights_);
        const bool maximizing = board.to_move() == me_;
        double best = maximizing ? -kInf : kInf;
        for (const Move m : board.legal_moves()) {
            board.do_move(m);
            const auto value = evaluate(board, depth - 1);
            board.undo_move();
            if (!value) return std::nullopt;
            best = maximizing ? std::max(best, *value) : std::min(best, *value);
        }
        return best;
    }

    std::vector<double> weights_;
    PieceColor me_ = PieceColor::White;
    CancellationToken cancel_;
    long long nodes_ = 0;
};

inline MinimaxResult minimax_policy(Board& board, int depth, CancellationToken cancel = {}) {
    MinimaxSearch search(centrality_weights(board.rows(), board.cols()));
    return search.run(board, depth, cancel);
}

// The framework's minimax baseline; "depth=N" (N >= 1) sets the search depth.
class MinimaxThinker : public Thinker {
public:
    static constexpr int kDefaultDepth = 3;

    FutureMove think(Board& board, CancellationToken cancel) override {
        if (cancel.stop_requested()) return kNoMove;
        if (weights_.size() != static_cast<std::size_t>(board.rows() * board.cols())) {
            weights_ = centrality_weights(board.rows(), board.cols());
        }
        MinimaxSearch search(weights_);
        const auto result = search.run(board, depth_, cancel);
        on_thinking_info("nodes=" + std::to_string(result.nodes) + (result.cancelled ? " cancelled" : ""));
        return result.move;
    }

    std::string name() const override { return Thinker::name() + "(d=" + std::to_string(depth_) + ")"; }

    bool isolated() const override { return true; }

    int depth() const noexcept { return depth_; }

protected:
    void configure(std::string_view params) override {
        depth_ = kDefaultDepth;
        for (const auto& [key, value] : parse_params_string(params)) {
            if (key != "depth") throw SetupError("unknown parameter '" + key + "' for " + Thinker::name());
            depth_ = detail::parse_int_param(key, value);
            if (depth_ < 1) throw SetupError("depth must be >= 1");
        }
        weights_ = centrality_weights(config().rows(), config().cols());
    }

private:
    int depth_ = kDefaultDepth;
    std::vector<double> weights_;
};

}  // namespace csl
