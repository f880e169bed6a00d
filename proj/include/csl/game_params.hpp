#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>

#include "csl/errors.hpp"

namespace csl {

// Rule parameters of a match. Defaults reproduce a regular game of Simplexity.
struct GameParams {
    int rows = 6;
    int cols = 7;
    int win_length = 4;
    int squares = 11;  // square pieces per player
    int rounds = 10;   // round pieces per player
    std::chrono::milliseconds time_limit{200};

    friend bool operator==(const GameParams&, const GameParams&) = default;

    // Throws InvalidParams naming the first offending field.
    void validate() const {
        if (rows < 1) throw InvalidParams("rows must be >= 1");
        if (cols < 1) throw InvalidParams("cols must be >= 1");
        if (win_length < 1) throw InvalidParams("win_length must be >= 1");
        if (squares < 0) throw InvalidParams("squares must be >= 0");
        if (rounds < 0) throw InvalidParams("rounds must be >= 0");
        if (squares + rounds < 1) throw InvalidParams("squares + rounds must be >= 1");
        if (time_limit.count() <= 0) throw InvalidParams("time_limit must be > 0");
    }

    int pieces_per_player() const noexcept { return squares + rounds; }
};

// Longest possible match: board cells or total piece supply, whichever runs out first.
inline int max_turns(const GameParams& p) noexcept {
    return std::min(p.rows * p.cols, 2 * (p.squares + p.rounds));
}

inline int initial_branching(const GameParams& p) noexcept {
    return (p.squares > 0 ? p.cols : 0) + (p.rounds > 0 ? p.cols : 0);
}

// Reported bounds only; nothing enumerates them. 5 cell states per turn-reachable cell,
// and at most 2c moves per ply.
inline double state_space_upper_bound(const GameParams& p) {
    return std::pow(5.0, max_turns(p));
}

inline double game_tree_upper_bound(const GameParams& p) {
    return std::pow(2.0 * p.cols, max_turns(p));
}

}  // namespace csl
