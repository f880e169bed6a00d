#pragma once

#include <array>
#include <vector>

#include "csl/game_params.hpp"
#include "csl/piece.hpp"

namespace csl {

// A maximal straight run of board positions long enough to hold a winning line.
using Corridor = std::vector<Position>;

struct Direction {
    int drow;
    int dcol;
};

inline constexpr std::array<Direction, 4> kLineDirections{{
    {0, 1},   // horizontal
    {1, 0},   // vertical
    {1, 1},   // diagonal, rising to the right
    {1, -1},  // diagonal, rising to the left
}};

// Every maximal horizontal, vertical and diagonal line with length >= win_length,
// each listed once. Static geometry: independent of board content.
inline std::vector<Corridor> win_corridors(const GameParams& p) {
    std::vector<Corridor> out;
    auto inside = [&](int r, int c) { return r >= 0 && r < p.rows && c >= 0 && c < p.cols; };
    for (const auto& d : kLineDirections) {
        for (int r = 0; r < p.rows; ++r) {
            for (int c = 0; c < p.cols; ++c) {
                // only start at the first cell of a maximal line
                if (inside(r - d.drow, c - d.dcol)) continue;
                Corridor line;
                for (int rr = r, cc = c; inside(rr, cc); rr += d.drow, cc += d.dcol) {
                    line.push_back({rr, cc});
                }
                if (static_cast<int>(line.size()) >= p.win_length) out.push_back(std::move(line));
            }
        }
    }
    return out;
}

}  // namespace csl
