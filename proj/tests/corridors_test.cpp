#include <gtest/gtest.h>

#include <set>

#include "csl/corridors.hpp"
#include "oracles.hpp"

namespace csl {
namespace {

GameParams dims(int r, int c, int w) {
    GameParams p;
    p.rows = r;
    p.cols = c;
    p.win_length = w;
    return p;
}

TEST(Corridors, DefaultBoardHas25) {
    EXPECT_EQ(oracle::corridor_count(6, 7, 4), 25);
    EXPECT_EQ(win_corridors(GameParams{}).size(), 25u);
}

TEST(Corridors, SmallCases) {
    EXPECT_EQ(win_corridors(dims(3, 3, 3)).size(), 8u);
    EXPECT_TRUE(win_corridors(dims(2, 2, 4)).empty());
}

TEST(Corridors, MatchEnumerationForAllSmallBoards) {
    for (int r = 2; r <= 8; ++r) {
        for (int c = 2; c <= 8; ++c) {
            EXPECT_EQ(static_cast<int>(win_corridors(dims(r, c, 4)).size()), oracle::corridor_count(r, c, 4))
                << r << "x" << c;
        }
    }
}

TEST(Corridors, CorridorsAreMaximalConsecutiveLines) {
    for (int w = 1; w <= 5; ++w) {
        const auto p = dims(5, 6, w);
        const auto corridors = win_corridors(p);
        std::set<std::vector<std::pair<int, int>>> seen;
        for (const auto& line : corridors) {
            ASSERT_GE(static_cast<int>(line.size()), w);
            std::vector<std::pair<int, int>> key;
            for (const auto& pos : line) {
                ASSERT_TRUE(pos.row >= 0 && pos.row < p.rows && pos.col >= 0 && pos.col < p.cols);
                key.emplace_back(pos.row, pos.col);
            }
            EXPECT_TRUE(seen.insert(key).second) << "duplicate corridor";
            if (line.size() < 2) continue;
            const int dr = line[1].row - line[0].row;
            const int dc = line[1].col - line[0].col;
            for (std::size_t i = 1; i < line.size(); ++i) {
                EXPECT_EQ(line[i].row - line[i - 1].row, dr);
                EXPECT_EQ(line[i].col - line[i - 1].col, dc);
            }
            // cannot be extended on either end
            auto inside = [&](int r, int c) { return r >= 0 && r < p.rows && c >= 0 && c < p.cols; };
            EXPECT_FALSE(inside(line.front().row - dr, line.front().col - dc));
            EXPECT_FALSE(inside(line.back().row + dr, line.back().col + dc));
        }
    }
}

}  // namespace
}  // namespace csl
