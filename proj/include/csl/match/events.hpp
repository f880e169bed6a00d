#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <variant>

#include "csl/board.hpp"
#include "csl/match/match_result.hpp"

namespace csl {

struct MatchStart {
    GameParams params;
    std::string white_name;
    std::string red_name;
};

struct MoveChosen {
    PieceColor color;
    std::string agent;
    Move move;
    std::chrono::microseconds think_time;
};

struct BoardUpdated {
    Board board;  // snapshot after the move
    PlacedMove last;
};

struct ThinkingInfo {
    PieceColor color;
    std::string agent;
    std::string text;
};

struct MatchEnd {
    MatchResult result;
};

struct MatchEvent {
    std::chrono::steady_clock::time_point at;
    std::variant<MatchStart, MoveChosen, BoardUpdated, ThinkingInfo, MatchEnd> payload;
};

// Called on the controller's thread; must not block.
using MatchListener = std::function<void(const MatchEvent&)>;

}  // namespace csl
