#include <gtest/gtest.h>

#include "csl/board.hpp"
#include "csl/game_params.hpp"

namespace csl {
namespace {

GameParams make(int r, int c, int w, int s, int o) {
    GameParams p;
    p.rows = r;
    p.cols = c;
    p.win_length = w;
    p.squares = s;
    p.rounds = o;
    return p;
}

TEST(GameParams, DefaultsAreRegularSimplexity) {
    GameParams p;
    EXPECT_EQ(p.rows, 6);
    EXPECT_EQ(p.cols, 7);
    EXPECT_EQ(p.win_length, 4);
    EXPECT_EQ(p.squares, 11);
    EXPECT_EQ(p.rounds, 10);
    EXPECT_EQ(p.time_limit.count(), 200);
    EXPECT_NO_THROW(p.validate());
}

TEST(GameParams, RejectsEachInvalidField) {
    auto message_for = [](GameParams p) {
        try {
            p.validate();
        } catch (const InvalidParams& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message_for(make(0, 7, 4, 11, 10)).find("rows"), std::string::npos);
    EXPECT_NE(message_for(make(6, 0, 4, 11, 10)).find("cols"), std::string::npos);
    EXPECT_NE(message_for(make(6, 7, 0, 11, 10)).find("win_length"), std::string::npos);
    EXPECT_NE(message_for(make(6, 7, 4, 0, 0)).find("squares + rounds"), std::string::npos);
    EXPECT_NE(message_for(make(6, 7, 4, -1, 3)).find("squares"), std::string::npos);
    GameParams zero_time;
    zero_time.time_limit = std::chrono::milliseconds{0};
    EXPECT_NE(message_for(zero_time).find("time_limit"), std::string::npos);
}

TEST(GameParams, MaxTurns) {
    EXPECT_EQ(max_turns(GameParams{}), 42);
    EXPECT_EQ(max_turns(make(2, 2, 2, 5, 5)), 4);
    EXPECT_EQ(max_turns(make(6, 7, 4, 2, 1)), 6);
}

TEST(GameParams, ReportedBounds) {
    GameParams p;
    EXPECT_DOUBLE_EQ(state_space_upper_bound(p), std::pow(5.0, 42));
    EXPECT_DOUBLE_EQ(game_tree_upper_bound(p), std::pow(14.0, 42));
    EXPECT_EQ(initial_branching(p), 14);
    EXPECT_EQ(initial_branching(make(6, 7, 4, 3, 0)), 7);
}

TEST(GameParams, MinimalBoardConstructs) {
    Board b(make(1, 1, 1, 1, 0));
    EXPECT_EQ(b.rows(), 1);
    EXPECT_EQ(b.cols(), 1);
    EXPECT_EQ(b.to_move(), PieceColor::White);
    EXPECT_THROW(Board(make(0, 7, 4, 11, 10)), InvalidParams);
}

}  // namespace
}  // namespace csl
