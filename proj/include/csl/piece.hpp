#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace csl {

enum class PieceColor : std::uint8_t { White = 0, Red = 1 };
enum class PieceShape : std::uint8_t { Round = 0, Square = 1 };

constexpr PieceColor opponent(PieceColor c) noexcept {
    return c == PieceColor::White ? PieceColor::Red : PieceColor::White;
}

constexpr PieceShape other_shape(PieceShape s) noexcept {
    return s == PieceShape::Round ? PieceShape::Square : PieceShape::Round;
}

// White wins with lines of round pieces, Red with lines of square pieces.
constexpr PieceShape winning_shape(PieceColor c) noexcept {
    return c == PieceColor::White ? PieceShape::Round : PieceShape::Square;
}

constexpr PieceColor shape_owner(PieceShape s) noexcept {
    return s == PieceShape::Round ? PieceColor::White : PieceColor::Red;
}

struct Piece {
    PieceColor color;
    PieceShape shape;

    friend constexpr bool operator==(const Piece&, const Piece&) = default;
};

struct Position {
    int row;
    int col;

    friend constexpr bool operator==(const Position&, const Position&) = default;
};

struct Move {
    int column;
    PieceShape shape;

    friend constexpr bool operator==(const Move&, const Move&) = default;
};

inline std::string to_string(PieceColor c) {
    return c == PieceColor::White ? "White" : "Red";
}

inline std::string to_string(PieceShape s) {
    return s == PieceShape::Round ? "Round" : "Square";
}

// "<column><r|s>", e.g. "3r".
inline std::string to_notation(Move m) {
    return std::to_string(m.column) + (m.shape == PieceShape::Round ? 'r' : 's');
}

// Accepts move notation with arbitrary surrounding / inner whitespace and either
// letter case ("3r", " 3 S "). The column is not range-checked here.
inline std::optional<Move> parse_move(std::string_view text) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    bool negative = false;
    if (i < text.size() && text[i] == '-') {
        negative = true;
        ++i;
    }
    std::size_t digits_begin = i;
    long column = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        column = column * 10 + (text[i] - '0');
        if (column > 1'000'000) return std::nullopt;
        ++i;
    }
    if (i == digits_begin) return std::nullopt;
    skip_ws();
    if (i >= text.size()) return std::nullopt;
    char letter = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    ++i;
    skip_ws();
    if (i != text.size()) return std::nullopt;
    PieceShape shape;
    if (letter == 'r') {
        shape = PieceShape::Round;
    } else if (letter == 's') {
        shape = PieceShape::Square;
    } else {
        return std::nullopt;
    }
    return Move{static_cast<int>(negative ? -column : column), shape};
}

}  // namespace csl
