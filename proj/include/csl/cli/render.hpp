#pragma once

#include <ostream>
#include <string>

#include "csl/board_text.hpp"
#include "csl/match/events.hpp"

namespace csl::cli {

// Column indices, last digit only, one character per column.
inline std::string ruler(int cols) {
    std::string out;
    for (int c = 0; c < cols; ++c) out.push_back(static_cast<char>('0' + c % 10));
    return out;
}

// encode_board output with a ruler above and below.
inline std::string render_board(const Board& board) {
    const auto r = ruler(board.cols());
    return r + "\n" + encode_board(board) + "\n" + r + "\n";
}

inline std::string result_line(const MatchResult& result) {
    return "winner=" + (result.winner ? to_string(*result.winner) : std::string("Draw")) +
           " reason=" + to_string(result.reason) + " moves=" + std::to_string(result.moves());
}

// Text view of a match. Prints no timings, so identical matches print identical text.
class AsciiRenderer {
public:
    explicit AsciiRenderer(std::ostream& out) : out_(out) {}

    void operator()(const MatchEvent& event) {
        std::visit([&](const auto& e) { on(e); }, event.payload);
        out_.flush();
    }

private:
    void on(const MatchStart& e) {
        const auto& p = e.params;
        out_ << "White: " << e.white_name << "\n"
             << "Red:   " << e.red_name << "\n"
             << "Board " << p.rows << "x" << p.cols << ", win " << p.win_length << ", " << p.squares << " squares and "
             << p.rounds << " rounds each, " << p.time_limit.count() << " ms per move\n\n"
             << render_board(Board(p)) << "\n";
    }
    void on(const MoveChosen& e) { out_ << to_string(e.color) << " (" << e.agent << ") plays " << to_notation(e.move) << "\n"; }
    void on(const BoardUpdated& e) { out_ << render_board(e.board) << "\n"; }
    void on(const ThinkingInfo& e) { out_ << "  [" << e.agent << "] " << e.text << "\n"; }
    void on(const MatchEnd& e) {
        const auto& r = e.result;
        if (r.winner) {
            out_ << to_string(*r.winner) << " wins";
        } else {
            out_ << "No winner";
        }
        out_ << " (" << to_string(r.reason) << ")";
        if (!r.detail.empty()) out_ << ": " << r.detail;
        out_ << "\n";
    }

    std::ostream& out_;
};

}  // namespace csl::cli
