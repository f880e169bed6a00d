#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csl/board.hpp"

namespace csl {

// Cell characters of the text board format.
inline char piece_char(const std::optional<Piece>& p) {
    if (!p) return '.';
    if (p->color == PieceColor::White) return p->shape == PieceShape::Round ? 'w' : 'W';
    return p->shape == PieceShape::Round ? 'r' : 'R';
}

inline std::optional<Piece> char_piece(char ch, bool& ok) {
    ok = true;
    switch (ch) {
        case '.': return std::nullopt;
        case 'w': return Piece{PieceColor::White, PieceShape::Round};
        case 'W': return Piece{PieceColor::White, PieceShape::Square};
        case 'r': return Piece{PieceColor::Red, PieceShape::Round};
        case 'R': return Piece{PieceColor::Red, PieceShape::Square};
        default: ok = false; return std::nullopt;
    }
}

// Rows top to bottom, LF separated, no trailing newline. History and side to move
// are not encoded.
inline std::string encode_board(const Board& b) {
    std::string out;
    out.reserve(static_cast<std::size_t>((b.cols() + 1) * b.rows()));
    for (int r = b.rows() - 1; r >= 0; --r) {
        for (int c = 0; c < b.cols(); ++c) out.push_back(piece_char(b.at(r, c)));
        if (r > 0) out.push_back('\n');
    }
    return out;
}

// Inverse of encode_board. The side to move follows from the piece counts (White
// moves first), reserves from conservation. A single trailing LF is tolerated.
inline Board decode_board(std::string_view text, const GameParams& params) {
    params.validate();
    if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (true) {
        const auto nl = text.find('\n', start);
        lines.push_back(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    if (static_cast<int>(lines.size()) != params.rows) {
        throw DecodeError("expected " + std::to_string(params.rows) + " rows, got " + std::to_string(lines.size()));
    }
    std::vector<std::optional<Piece>> grid(static_cast<std::size_t>(params.rows * params.cols));
    int white = 0;
    int red = 0;
    for (int i = 0; i < params.rows; ++i) {
        const auto line = lines[static_cast<std::size_t>(i)];
        if (static_cast<int>(line.size()) != params.cols) {
            throw DecodeError("expected " + std::to_string(params.cols) + " columns in line " + std::to_string(i + 1) +
                              ", got " + std::to_string(line.size()));
        }
        const int row = params.rows - 1 - i;
        for (int c = 0; c < params.cols; ++c) {
            bool ok = false;
            auto piece = char_piece(line[static_cast<std::size_t>(c)], ok);
            if (!ok) {
                throw DecodeError(std::string("unknown character '") + line[static_cast<std::size_t>(c)] + "' in line " +
                                  std::to_string(i + 1));
            }
            if (piece) (piece->color == PieceColor::White ? white : red)++;
            grid[static_cast<std::size_t>(row * params.cols + c)] = piece;
        }
    }
    if (white != red && white != red + 1) throw DecodeError("piece counts inconsistent with alternating turns");
    // from_grid reports gravity and supply violations
    return Board::from_grid(params, grid, white == red ? PieceColor::White : PieceColor::Red);
}

}  // namespace csl
