#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "csl/board.hpp"
#include "csl/board_text.hpp"

namespace csl {

// Why a match ended. The Opponent* reasons name what the loser did.
enum class EndReason {
    LineWin,
    OpponentException,
    OpponentTimeout,
    OpponentInvalidMove,
    OpponentSetupFailure,
    OpponentResigned,
    Draw,
};

inline std::string to_string(EndReason r) {
    switch (r) {
        case EndReason::LineWin: return "LineWin";
        case EndReason::OpponentException: return "OpponentException";
        case EndReason::OpponentTimeout: return "OpponentTimeout";
        case EndReason::OpponentInvalidMove: return "OpponentInvalidMove";
        case EndReason::OpponentSetupFailure: return "OpponentSetupFailure";
        case EndReason::OpponentResigned: return "OpponentResigned";
        case EndReason::Draw: return "Draw";
    }
    return "?";
}

struct TranscriptEntry {
    Move move;
    int row;
    std::chrono::microseconds think_time;
};

struct MatchResult {
    std::optional<PieceColor> winner;  // empty for a draw (or a double setup forfeit)
    EndReason reason = EndReason::Draw;
    std::vector<TranscriptEntry> transcript;
    std::string final_board;
    std::vector<Position> winning_line;
    std::string white_name;
    std::string red_name;
    std::string detail;  // exception text, illegal-move reason, ...

    bool decisive() const noexcept { return winner.has_value(); }
    int moves() const noexcept { return static_cast<int>(transcript.size()); }
};

inline constexpr int kPointsWin = 3;
inline constexpr int kPointsDraw = 1;
inline constexpr int kPointsLoss = 0;

inline int score(const MatchResult& result, PieceColor seat) {
    if (result.winner) return *result.winner == seat ? kPointsWin : kPointsLoss;
    return result.reason == EndReason::Draw ? kPointsDraw : kPointsLoss;
}

// Moves in notation with landing rows, one per line: "3r@0". No timings, so equal
// matches give byte-identical transcripts.
inline std::string format_transcript(const MatchResult& result) {
    std::string out;
    for (const auto& e : result.transcript) out += to_notation(e.move) + "@" + std::to_string(e.row) + "\n";
    return out;
}

// Replays the transcript on a fresh board. Throws IllegalMove if it does not replay.
inline Board replay(const GameParams& params, const MatchResult& result) {
    Board b(params);
    for (const auto& e : result.transcript) {
        const int row = b.do_move(e.move);
        if (row != e.row) throw IllegalMove("transcript landing row mismatch at " + to_notation(e.move));
    }
    return b;
}

}  // namespace csl
