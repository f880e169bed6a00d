#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>

#include "csl/board.hpp"
#include "csl/errors.hpp"
#include "csl/game_params.hpp"

namespace csl {

// Raised by the controller when the time limit expires; agents poll it while thinking.
using CancellationToken = std::stop_token;

// Either a decided move or "no move" (only legal after cancellation).
using FutureMove = std::optional<Move>;
inline constexpr std::nullopt_t kNoMove = std::nullopt;

// Read-only match properties available to an agent from setup onwards.
class MatchConfig {
public:
    MatchConfig() = default;
    explicit MatchConfig(GameParams params) : params_(params) {}

    const GameParams& params() const noexcept { return params_; }
    int rows() const noexcept { return params_.rows; }
    int cols() const noexcept { return params_.cols; }
    int win_length() const noexcept { return params_.win_length; }
    int squares() const noexcept { return params_.squares; }
    int rounds() const noexcept { return params_.rounds; }
    std::chrono::milliseconds time_limit() const noexcept { return params_.time_limit; }

private:
    GameParams params_;
};

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace detail

// Strips the namespace ("a.b." or "a::b::") and a trailing "thinker", "aithinker" or
// "thinkerai" (any case) from a registry name.
inline std::string display_name_from(std::string_view registry_name) {
    std::string_view name = registry_name;
    if (auto dot = name.find_last_of(".:"); dot != std::string_view::npos) name.remove_prefix(dot + 1);
    // repeat until stable so that stripping is idempotent ("XThinkerThinker")
    for (bool stripped = true; stripped;) {
        stripped = false;
        const std::string low = detail::lower(name);
        for (std::string_view suffix : {"aithinker", "thinkerai", "thinker"}) {
            if (low.size() > suffix.size() && std::string_view(low).ends_with(suffix)) {
                name.remove_suffix(suffix.size());
                stripped = true;
                break;
            }
        }
    }
    return std::string(name);
}

// Parses the "key=value;key=value" agent parameter format. Whitespace around keys and
// values is ignored, as are empty segments. Throws SetupError on a segment without
// '=', an empty key, or a repeated key.
inline std::map<std::string, std::string> parse_params_string(std::string_view text) {
    std::map<std::string, std::string> out;
    while (true) {
        const auto semi = text.find(';');
        const auto segment = detail::trim(text.substr(0, semi));
        if (!segment.empty()) {
            const auto eq = segment.find('=');
            if (eq == std::string_view::npos) throw SetupError("expected key=value, got '" + std::string(segment) + "'");
            const auto key = detail::trim(segment.substr(0, eq));
            const auto value = detail::trim(segment.substr(eq + 1));
            if (key.empty()) throw SetupError("empty parameter name in '" + std::string(segment) + "'");
            if (!out.emplace(std::string(key), std::string(value)).second) {
                throw SetupError("parameter '" + std::string(key) + "' given twice");
            }
        }
        if (semi == std::string_view::npos) break;
        text.remove_prefix(semi + 1);
    }
    return out;
}

// Base class of every agent. Constructed without arguments; configured once through
// setup() before the first think().
class Thinker {
public:
    virtual ~Thinker() = default;

    void setup(const MatchConfig& config, std::string_view params) {
        config_ = config;
        params_string_ = std::string(params);
        configure(params);
    }

    // Called on a worker thread with a private board copy. Return kNoMove only once
    // `cancel` has been raised.
    virtual FutureMove think(Board& board, CancellationToken cancel) = 0;

    // Defaults to the registry name with namespace and thinker suffixes removed.
    virtual std::string name() const { return display_name_from(registry_name_); }

    const std::string& registry_name() const noexcept { return registry_name_; }
    void set_registry_name(std::string n) { registry_name_ = std::move(n); }

    const std::string& params_string() const noexcept { return params_string_; }

    // Untimed thinkers (human seats) are not subject to the per-move time limit.
    virtual bool timed() const { return true; }

    // True when instances share no mutable state, so matches involving them may run
    // in parallel.
    virtual bool isolated() const { return false; }

    void set_thinking_listener(std::function<void(std::string_view)> listener) {
        listener_ = std::move(listener);
    }

protected:
    // Parses the agent's parameters. The default accepts only an empty string.
    virtual void configure(std::string_view params) {
        if (!parse_params_string(params).empty()) throw SetupError(name() + " takes no parameters");
    }

    void on_thinking_info(std::string_view info) const {
        if (listener_) listener_(info);
    }

    const MatchConfig& config() const noexcept { return config_; }

private:
    MatchConfig config_;
    std::string registry_name_ = "Thinker";
    std::string params_string_;
    std::function<void(std::string_view)> listener_;
};

namespace detail {

inline int parse_int_param(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(value, &used);
    } catch (const std::exception&) {
        throw SetupError("parameter '" + key + "' expects an integer, got '" + value + "'");
    }
    if (used != value.size()) throw SetupError("parameter '" + key + "' expects an integer, got '" + value + "'");
    return v;
}

inline unsigned long long parse_u64_param(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        if (!value.empty() && value.front() == '-') throw std::invalid_argument("negative");
        v = std::stoull(value, &used);
    } catch (const std::exception&) {
        throw SetupError("parameter '" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    if (used != value.size()) {
        throw SetupError("parameter '" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    return v;
}

}  // namespace detail

}  // namespace csl
