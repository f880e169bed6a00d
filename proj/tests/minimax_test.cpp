#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <thread>

#include "csl/agents/minimax.hpp"
#include "csl/board_text.hpp"
#include "csl/solver/solver.hpp"

namespace csl {
namespace {

constexpr auto R = PieceShape::Round;
constexpr auto S = PieceShape::Square;

GameParams make(int r, int c, int w, int s, int o) {
    GameParams p;
    p.rows = r;
    p.cols = c;
    p.win_length = w;
    p.squares = s;
    p.rounds = o;
    return p;
}

Move pick(Board b, int depth) {
    const auto r = minimax_policy(b, depth);
    EXPECT_TRUE(r.move);
    return r.move.value_or(Move{-1, R});
}

bool contains(const std::vector<Move>& v, Move m) { return std::find(v.begin(), v.end(), m) != v.end(); }

// True if playing m loses on the spot or lets the opponent win with their next move.
bool immediately_losing(Board b, Move m) {
    const PieceColor me = b.to_move();
    b.do_move(m);
    const auto now = b.check_winner();
    if (now.terminal()) return now.status == Status::Win && now.winner != me;
    for (const Move reply : b.legal_moves()) {
        b.do_move(reply);
        const bool lost = b.check_winner().is_win_for(opponent(me));
        b.undo_move();
        if (lost) return true;
    }
    return false;
}

TEST(Heuristic, WeightsPeakAtCentreAndVanishAtCorners) {
    const auto w = centrality_weights(6, 7);
    for (double x : w) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
    EXPECT_DOUBLE_EQ(w[0], 0.0);
    EXPECT_DOUBLE_EQ(w[6], 0.0);
    EXPECT_DOUBLE_EQ(w[35], 0.0);
    EXPECT_DOUBLE_EQ(w[41], 0.0);
    EXPECT_DOUBLE_EQ(centrality_weights(3, 3)[4], 1.0);
    EXPECT_DOUBLE_EQ(centrality_weights(1, 1)[0], 1.0);
    // left-right mirror symmetry
    for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 7; ++c) EXPECT_DOUBLE_EQ(w[r * 7 + c], w[r * 7 + 6 - c]);
    }
}

TEST(Heuristic, SignFollowsColorAndShape) {
    const auto p = make(3, 3, 3, 4, 4);
    Board b(p);
    EXPECT_DOUBLE_EQ(centrality_score(b, PieceColor::White), 0.0);
    b.do_move({1, R});  // white round at the bottom middle
    const double wt = centrality_weights(3, 3)[1];
    EXPECT_DOUBLE_EQ(centrality_score(b, PieceColor::White), 2 * wt);
    EXPECT_DOUBLE_EQ(centrality_score(b, PieceColor::Red), -2 * wt);
    Board mixed(p);
    mixed.do_move({1, S});  // a white square serves each side once
    EXPECT_DOUBLE_EQ(centrality_score(mixed, PieceColor::White), 0.0);
    EXPECT_DOUBLE_EQ(centrality_score(mixed, PieceColor::Red), 0.0);
}

TEST(Heuristic, AntisymmetricBetweenSides) {
    std::mt19937_64 rng(3);
    Board b;
    for (int i = 0; i < 30; ++i) {
        const auto moves = b.legal_moves();
        b.do_move(moves[rng() % moves.size()]);
        EXPECT_NEAR(centrality_score(b, PieceColor::White), -centrality_score(b, PieceColor::Red), 1e-12);
    }
}

TEST(Minimax, TakesImmediateWin) {
    Board b;
    for (int i = 0; i < 3; ++i) {
        b.do_move({4, R});
        b.do_move({6, S});
    }
    for (int depth : {1, 2, 3}) EXPECT_EQ(pick(b, depth), (Move{4, R})) << depth;
}

TEST(Minimax, BlocksWhenOnlyOneMoveSurvives) {
    // Red has three squares on the bottom row. Only a white round at (0,4) stops the
    // fourth; a white square there would complete the square line for Red.
    const Board t = decode_board(
        ".......\n"
        ".......\n"
        ".......\n"
        ".......\n"
        ".......\n"
        "wRRR.ww",
        GameParams{});
    EXPECT_EQ(t.to_move(), PieceColor::White);
    const Move m = pick(t, 2);
    EXPECT_EQ(m, (Move{4, R}));
}

TEST(Minimax, AvoidsHandingOverAWinAndAgreesWithSolver) {
    const auto p = make(4, 4, 3, 8, 8);
    const Board b = decode_board(
        "....\n"
        "R...\n"
        "w...\n"
        "wRrW",
        p);
    ASSERT_EQ(b.to_move(), PieceColor::White);
    const Move trap = b.legal_moves().front();
    ASSERT_EQ(trap, (Move{0, R}));
    ASSERT_TRUE(immediately_losing(b, trap));

    Solver solver;
    const auto best = solver.best_moves(b);
    EXPECT_FALSE(contains(best, trap));
    EXPECT_EQ(solver.solve(b), (GameValue{Value::WhiteWins, 3}));
    for (int depth : {2, 3}) {
        const Move m = pick(b, depth);
        EXPECT_NE(m, trap) << depth;
        EXPECT_TRUE(contains(best, m)) << depth << " " << to_notation(m);
    }
}

TEST(Minimax, EmptyBoardRegressionMoves) {
    EXPECT_EQ(pick(Board{}, 2), (Move{1, R}));
    EXPECT_EQ(pick(Board{}, 3), (Move{3, R}));
}

TEST(Minimax, NodeCountMatchesPlainTreeSize) {
    // Without pruning, an empty 6x7 board at depth 2 visits 14 + 14*14 nodes.
    Board empty;
    const auto r = minimax_policy(empty, 2);
    EXPECT_EQ(r.nodes, 14 + 14 * 14);
    EXPECT_FALSE(r.cancelled);
}

TEST(Minimax, ReturnsPromptlyWhenCancelledMidSearch) {
    Board b;
    std::stop_source stop;
    MinimaxResult result;
    const auto started = std::chrono::steady_clock::now();
    std::chrono::steady_clock::time_point stopped;
    std::thread worker([&] { result = minimax_policy(b, 8, stop.get_token()); });
    std::this_thread::sleep_for(std::chrono::milliseconds{30});
    stopped = std::chrono::steady_clock::now();
    stop.request_stop();
    worker.join();
    const auto finished = std::chrono::steady_clock::now();
    EXPECT_TRUE(result.cancelled);
    EXPECT_LT(finished - stopped, std::chrono::milliseconds{50});
    EXPECT_LT(finished - started, std::chrono::seconds{1});
    EXPECT_EQ(b, Board{});  // the search restored the board
}

TEST(Minimax, ThinkerReportsNodes) {
    MinimaxThinker agent;
    agent.setup(MatchConfig{}, "depth=1");
    std::string info;
    agent.set_thinking_listener([&](std::string_view t) { info = t; });
    Board b;
    EXPECT_TRUE(agent.think(b, {}));
    EXPECT_EQ(info, "nodes=14");
}

// On every reachable non-terminal 3x3 position that is not lost for the side to move,
// a searching minimax never plays a move that loses at once or hands over a win.
TEST(Minimax, NeverBlundersOnSmallBoard) {
    const auto p = make(3, 3, 3, 3, 2);
    std::set<std::string> seen;
    std::vector<Board> frontier{Board(p)};
    Solver solver;
    long long checked = 0;
    while (!frontier.empty()) {
        Board b = std::move(frontier.back());
        frontier.pop_back();
        const auto raw = b.raw_cells();
        if (!seen.insert(std::string(raw.begin(), raw.end())).second) continue;
        if (b.check_winner().terminal()) continue;
        const auto moves = b.legal_moves();
        if (solver.solve(b).value != win_value(opponent(b.to_move()))) {
            for (int depth : {2, 4}) {
                const Move m = pick(b, depth);
                ASSERT_FALSE(immediately_losing(b, m))
                    << "depth " << depth << " played " << to_notation(m) << " in\n" << encode_board(b);
            }
            ++checked;
        }
        for (const Move m : moves) {
            Board next = b;
            next.do_move(m);
            frontier.push_back(std::move(next));
        }
    }
    EXPECT_GT(checked, 1000);
}

}  // namespace
}  // namespace csl
