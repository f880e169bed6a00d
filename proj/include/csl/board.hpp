#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "csl/corridors.hpp"
#include "csl/errors.hpp"
#include "csl/game_params.hpp"
#include "csl/piece.hpp"

namespace csl {

enum class Status : std::uint8_t { InProgress, Draw, Win };

// How a decided game was won. Shape lines outrank color lines.
enum class WinKind : std::uint8_t { None, Shape, Color };

struct Outcome {
    Status status = Status::InProgress;
    std::optional<PieceColor> winner;
    WinKind kind = WinKind::None;
    std::vector<Position> line;  // exactly win_length positions for a Win

    bool terminal() const noexcept { return status != Status::InProgress; }
    bool is_win_for(PieceColor c) const noexcept { return status == Status::Win && winner == c; }

    static Outcome in_progress() { return {}; }
    static Outcome draw() { return {Status::Draw, std::nullopt, WinKind::None, {}}; }
    static Outcome win(PieceColor c, WinKind k, std::vector<Position> line) {
        return {Status::Win, c, k, std::move(line)};
    }
};

struct PlacedMove {
    Move move;
    int row;

    friend bool operator==(const PlacedMove&, const PlacedMove&) = default;
};

// Full match state. Row 0 is the bottom row, column 0 the leftmost column.
// Copies are cheap enough to hand one to every thinking agent; the corridor table is
// shared between copies and never mutated.
class Board {
public:
    explicit Board(GameParams params = {}) : params_(params) {
        params_.validate();
        corridors_ = std::make_shared<const std::vector<Corridor>>(csl::win_corridors(params_));
        cells_.assign(static_cast<std::size_t>(params_.rows * params_.cols), kEmpty);
        heights_.assign(static_cast<std::size_t>(params_.cols), 0);
        for (auto color : {PieceColor::White, PieceColor::Red}) {
            reserves_[reserve_index(color, PieceShape::Round)] = params_.rounds;
            reserves_[reserve_index(color, PieceShape::Square)] = params_.squares;
        }
    }

    // Builds a position from a grid (row-major, bottom row first) with an explicit side
    // to move. History starts empty; reserves follow from conservation. Throws
    // DecodeError when the grid breaks gravity or uses more pieces than supplied.
    static Board from_grid(const GameParams& params, std::span<const std::optional<Piece>> grid,
                           PieceColor to_move) {
        Board b(params);
        if (grid.size() != b.cells_.size()) throw DecodeError("grid size does not match board dimensions");
        for (int c = 0; c < params.cols; ++c) {
            bool seen_empty = false;
            for (int r = 0; r < params.rows; ++r) {
                const auto& cell = grid[static_cast<std::size_t>(r * params.cols + c)];
                if (!cell) {
                    seen_empty = true;
                    continue;
                }
                if (seen_empty) throw DecodeError("gravity violated in column " + std::to_string(c));
                int& left = b.reserves_[reserve_index(cell->color, cell->shape)];
                if (left == 0) {
                    throw DecodeError("too many " + to_string(cell->color) + " " + to_string(cell->shape) +
                                      " pieces on the grid");
                }
                --left;
                b.cells_[b.index(r, c)] = encode(*cell);
                b.heights_[static_cast<std::size_t>(c)] = r + 1;
                ++b.turn_count_;
            }
        }
        b.to_move_ = to_move;
        return b;
    }

    const GameParams& params() const noexcept { return params_; }
    int rows() const noexcept { return params_.rows; }
    int cols() const noexcept { return params_.cols; }
    int win_length() const noexcept { return params_.win_length; }

    std::optional<Piece> at(int row, int col) const {
        return decode(cells_.at(index(row, col)));
    }
    std::optional<Piece> at(Position p) const { return at(p.row, p.col); }

    int column_height(int col) const { return heights_.at(static_cast<std::size_t>(col)); }
    bool column_full(int col) const { return column_height(col) >= params_.rows; }

    int reserve(PieceColor color, PieceShape shape) const noexcept {
        return reserves_[reserve_index(color, shape)];
    }

    PieceColor to_move() const noexcept { return to_move_; }

    // Pieces on the grid. Equals history().size() for boards built purely by do_move.
    int turn_count() const noexcept { return turn_count_; }

    std::span<const PlacedMove> history() const noexcept { return history_; }

    const std::vector<Corridor>& win_corridors() const noexcept { return *corridors_; }

    // Ascending column, Round before Square.
    std::vector<Move> legal_moves() const {
        std::vector<Move> moves;
        moves.reserve(static_cast<std::size_t>(2 * params_.cols));
        const bool round = reserve(to_move_, PieceShape::Round) > 0;
        const bool square = reserve(to_move_, PieceShape::Square) > 0;
        for (int c = 0; c < params_.cols; ++c) {
            if (heights_[static_cast<std::size_t>(c)] >= params_.rows) continue;
            if (round) moves.push_back({c, PieceShape::Round});
            if (square) moves.push_back({c, PieceShape::Square});
        }
        return moves;
    }

    bool has_legal_move() const noexcept {
        if (reserve(to_move_, PieceShape::Round) == 0 && reserve(to_move_, PieceShape::Square) == 0) return false;
        for (int h : heights_) {
            if (h < params_.rows) return true;
        }
        return false;
    }

    // Empty when the move is legal for the side to move.
    std::optional<std::string> illegal_reason(Move m) const {
        if (m.column < 0 || m.column >= params_.cols) return "column out of range";
        if (column_full(m.column)) return "column full";
        if (reserve(to_move_, m.shape) == 0) return "shape exhausted";
        return std::nullopt;
    }

    bool is_legal(Move m) const { return !illegal_reason(m).has_value(); }

    // Drops a piece of the side to move; returns the landing row.
    int do_move(Move m) {
        if (auto why = illegal_reason(m)) throw IllegalMove(*why);
        auto& height = heights_[static_cast<std::size_t>(m.column)];
        const int row = height;
        cells_[index(row, m.column)] = encode({to_move_, m.shape});
        ++height;
        --reserves_[reserve_index(to_move_, m.shape)];
        history_.push_back({m, row});
        ++turn_count_;
        to_move_ = opponent(to_move_);
        return row;
    }

    Move undo_move() {
        if (history_.empty()) throw IllegalMove("no moves to undo");
        const PlacedMove last = history_.back();
        history_.pop_back();
        to_move_ = opponent(to_move_);
        cells_[index(last.row, last.move.column)] = kEmpty;
        --heights_[static_cast<std::size_t>(last.move.column)];
        ++reserves_[reserve_index(to_move_, last.move.shape)];
        --turn_count_;
        return last.move;
    }

    // Position-only scan of every corridor with a window of win_length. Priority:
    // round line, square line, white line, red line. Then Draw when the side to move
    // has no legal move or the turn limit is reached.
    Outcome check_winner() const {
        const int w = params_.win_length;
        // categories: 0 round, 1 square, 2 white, 3 red
        std::array<std::optional<std::pair<std::size_t, std::size_t>>, 4> found;
        const auto& corridors = *corridors_;
        for (std::size_t ci = 0; ci < corridors.size(); ++ci) {
            const auto& corridor = corridors[ci];
            std::array<int, 4> run{};
            for (std::size_t i = 0; i < corridor.size(); ++i) {
                const std::uint8_t cell = cells_[index(corridor[i].row, corridor[i].col)];
                if (cell == kEmpty) {
                    run = {};
                    continue;
                }
                const auto piece = *decode(cell);
                const bool round = piece.shape == PieceShape::Round;
                const bool white = piece.color == PieceColor::White;
                run[0] = round ? run[0] + 1 : 0;
                run[1] = round ? 0 : run[1] + 1;
                run[2] = white ? run[2] + 1 : 0;
                run[3] = white ? 0 : run[3] + 1;
                for (std::size_t k = 0; k < 4; ++k) {
                    if (run[k] >= w && !found[k]) found[k] = std::pair{ci, i + 1 - static_cast<std::size_t>(w)};
                }
            }
            if (found[0]) break;  // nothing outranks a round line
        }
        for (std::size_t k = 0; k < 4; ++k) {
            if (!found[k]) continue;
            const auto [ci, start] = *found[k];
            const auto& corridor = corridors[ci];
            std::vector<Position> line(corridor.begin() + static_cast<std::ptrdiff_t>(start),
                                       corridor.begin() + static_cast<std::ptrdiff_t>(start) + w);
            const PieceColor winner = (k == 0 || k == 2) ? PieceColor::White : PieceColor::Red;
            return Outcome::win(winner, k < 2 ? WinKind::Shape : WinKind::Color, std::move(line));
        }
        if (turn_count_ >= max_turns(params_) || !has_legal_move()) return Outcome::draw();
        return Outcome::in_progress();
    }

    // Throws std::logic_error if gravity, conservation or turn bookkeeping is broken.
    void validate() const {
        std::array<int, 4> on_grid{};
        int pieces = 0;
        for (int c = 0; c < params_.cols; ++c) {
            int height = 0;
            bool seen_empty = false;
            for (int r = 0; r < params_.rows; ++r) {
                const std::uint8_t cell = cells_[index(r, c)];
                if (cell == kEmpty) {
                    seen_empty = true;
                    continue;
                }
                if (seen_empty) throw std::logic_error("gravity invariant broken in column " + std::to_string(c));
                height = r + 1;
                ++on_grid[cell - 1];
                ++pieces;
            }
            if (height != heights_[static_cast<std::size_t>(c)]) throw std::logic_error("column height out of sync");
        }
        for (auto color : {PieceColor::White, PieceColor::Red}) {
            for (auto shape : {PieceShape::Round, PieceShape::Square}) {
                const auto k = reserve_index(color, shape);
                const int initial = shape == PieceShape::Round ? params_.rounds : params_.squares;
                if (on_grid[k] + reserves_[k] != initial) throw std::logic_error("piece conservation broken");
            }
        }
        if (pieces != turn_count_) throw std::logic_error("turn count out of sync");
        if (turn_count_ > max_turns(params_)) throw std::logic_error("turn count exceeds max_turns");
    }

    // Structural equality: grid, reserves and side to move. History is not compared.
    friend bool operator==(const Board& a, const Board& b) {
        return a.params_ == b.params_ && a.cells_ == b.cells_ && a.reserves_ == b.reserves_ &&
               a.to_move_ == b.to_move_;
    }

    // Raw cell codes, row-major from the bottom row: 0 empty, 1 + 2*color + shape.
    std::span<const std::uint8_t> raw_cells() const noexcept { return cells_; }

private:
    static constexpr std::uint8_t kEmpty = 0;

    static constexpr std::size_t reserve_index(PieceColor c, PieceShape s) noexcept {
        return static_cast<std::size_t>(c) * 2 + static_cast<std::size_t>(s);
    }
    static constexpr std::uint8_t encode(Piece p) noexcept {
        return static_cast<std::uint8_t>(1 + reserve_index(p.color, p.shape));
    }
    static constexpr std::optional<Piece> decode(std::uint8_t cell) noexcept {
        if (cell == kEmpty) return std::nullopt;
        const int k = cell - 1;
        return Piece{static_cast<PieceColor>(k / 2), static_cast<PieceShape>(k % 2)};
    }
    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row * params_.cols + col);
    }

    GameParams params_;
    std::shared_ptr<const std::vector<Corridor>> corridors_;
    std::vector<std::uint8_t> cells_;
    std::vector<int> heights_;
    std::array<int, 4> reserves_{};
    PieceColor to_move_ = PieceColor::White;
    int turn_count_ = 0;
    std::vector<PlacedMove> history_;
};

}  // namespace csl
