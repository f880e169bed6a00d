#pragma once

#include <cstdint>
#include <random>

#include "csl/agents/thinker.hpp"

namespace csl {

// Picks uniformly among the legal moves. "seed=N" makes the move sequence
// reproducible for identical legal-move lists; without it the seed comes from system
// entropy and is reported through thinking info on the first move.
class RandomThinker : public Thinker {
public:
    FutureMove think(Board& board, CancellationToken cancel) override {
        if (cancel.stop_requested()) return kNoMove;
        if (!announced_) {
            on_thinking_info("seed=" + std::to_string(seed_));
            announced_ = true;
        }
        const auto moves = board.legal_moves();
        if (moves.empty()) return kNoMove;
        return pick(moves);
    }

    std::string name() const override {
        auto base = Thinker::name();
        return seeded_ ? base + "(seed=" + std::to_string(seed_) + ")" : base;
    }

    bool isolated() const override { return true; }

    std::uint64_t seed() const noexcept { return seed_; }

    Move pick(const std::vector<Move>& moves) {
        std::uniform_int_distribution<std::size_t> dist(0, moves.size() - 1);
        return moves[dist(rng_)];
    }

protected:
    void configure(std::string_view params) override {
        seeded_ = false;
        for (const auto& [key, value] : parse_params_string(params)) {
            if (key == "seed") {
                seed_ = detail::parse_u64_param(key, value);
                seeded_ = true;
            } else {
                throw SetupError("unknown parameter '" + key + "' for " + Thinker::name());
            }
        }
        if (!seeded_) seed_ = (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
        rng_.seed(seed_);
        announced_ = false;
    }

private:
    std::uint64_t seed_ = 0;
    bool seeded_ = false;
    bool announced_ = false;
    std::mt19937_64 rng_;
};

}  // namespace csl
