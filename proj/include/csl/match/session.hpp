#pragma once

#include <atomic>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "csl/agents/registry.hpp"
#include "csl/match/match_controller.hpp"
#include "csl/match/standings.hpp"

namespace csl {

struct AgentDescriptor {
    std::string registry_name;
    std::string params;
    int line = 0;  // source line in a config file, 0 if not from a file
};

struct SessionConfig {
    GameParams params;
    std::vector<AgentDescriptor> entrants;
};

// One entrant per line: "<registry name> <params string to end of line>". '#' starts a
// comment; blank lines are skipped. With a registry, unknown names are rejected with
// the offending line number.
inline std::vector<AgentDescriptor> parse_session_config(std::istream& in, const AgentRegistry* registry = nullptr) {
    std::vector<AgentDescriptor> out;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        std::size_t split = 0;
        while (split < line.size() && !std::isspace(static_cast<unsigned char>(line[split]))) ++split;
        AgentDescriptor d;
        d.registry_name = std::string(line.substr(0, split));
        d.params = std::string(detail::trim(line.substr(split)));
        d.line = line_no;
        if (registry && !registry->contains(d.registry_name)) {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown agent '" + d.registry_name + "'");
        }
        out.push_back(std::move(d));
    }
    return out;
}

struct SessionOptions {
    // Matches run concurrently (one per worker) only when both entrants are isolated.
    int workers = 1;
    MatchOptions match;
};

struct SessionReport {
    std::vector<std::string> names;  // entrant display names, config order
    std::vector<MatchRecord> matches;
    Standings standings;  // ranked
};

using RecordListener = std::function<void(std::size_t number, const MatchRecord&)>;

// Appends "#2", "#3", ... to repeated display names.
inline std::vector<std::string> disambiguate(std::vector<std::string> names) {
    std::map<std::string, int> total;
    for (const auto& n : names) ++total[n];
    std::map<std::string, int> seen;
    for (auto& n : names) {
        if (total[n] < 2) continue;
        const int k = ++seen[n];
        if (k > 1) n += "#" + std::to_string(k);
    }
    return names;
}

// Every ordered pair once: both games of a pair back to back, lower index White first.
inline std::vector<std::pair<std::size_t, std::size_t>> round_robin_schedule(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> games;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            games.emplace_back(i, j);
            games.emplace_back(j, i);
        }
    }
    return games;
}

// Round-robin tournament scored 3/1/0. Each match gets fresh agent instances; an
// entrant whose setup fails forfeits all its matches.
inline SessionReport run_session(const SessionConfig& config, const AgentRegistry& registry,
                                 std::span<const MatchListener> listeners = {}, const RecordListener& on_record = {},
                                 const SessionOptions& options = {}) {
    config.params.validate();
    const auto& entrants = config.entrants;
    if (entrants.size() < 2) throw ConfigError("need at least 2 entrants");

    const MatchConfig match_config(config.params);
    std::vector<std::string> names;
    std::vector<bool> isolated;
    for (const auto& e : entrants) {
        const std::string* full = registry.resolve(e.registry_name);
        if (!full) {
            throw ConfigError((e.line ? "line " + std::to_string(e.line) + ": " : std::string()) + "unknown agent '" +
                              e.registry_name + "'");
        }
        try {
            auto probe = registry.create(e.registry_name, e.params, match_config);
            names.push_back(probe->name());
            isolated.push_back(probe->isolated());
        } catch (const SetupError&) {
            names.push_back(display_name_from(*full));
            isolated.push_back(true);  // forfeits never think
        }
    }
    names = disambiguate(std::move(names));

    auto make_seat = [&](std::size_t i) {
        try {
            std::shared_ptr<Thinker> agent = registry.create(entrants[i].registry_name, entrants[i].params, match_config);
            Seat s = Seat::of(std::move(agent));
            s.name = names[i];
            return s;
        } catch (const SetupError& e) {
            return Seat::failed(names[i], e.what());
        }
    };

    const auto schedule = round_robin_schedule(entrants.size());
    std::vector<std::optional<MatchResult>> results(schedule.size());
    auto play = [&](std::size_t k) {
        const auto [w, r] = schedule[k];
        results[k] = run_match(config.params, make_seat(w), make_seat(r), listeners, options.match);
    };

    SessionReport report;
    report.names = names;
    std::size_t reported = 0;
    auto flush = [&] {
        while (reported < schedule.size() && results[reported]) {
            MatchRecord rec{schedule[reported].first, schedule[reported].second, *results[reported]};
            report.matches.push_back(rec);
            if (on_record) on_record(reported + 1, rec);
            ++reported;
        }
    };

    if (options.workers > 1) {
        std::vector<std::size_t> parallel;
        for (std::size_t k = 0; k < schedule.size(); ++k) {
            if (isolated[schedule[k].first] && isolated[schedule[k].second]) parallel.push_back(k);
        }
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr error;
        std::vector<std::thread> pool;
        const auto n = std::min<std::size_t>(static_cast<std::size_t>(options.workers), parallel.size());
        for (std::size_t t = 0; t < n; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < parallel.size(); i = next++) {
                    try {
                        play(parallel[i]);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (!results[k]) play(k);
        flush();
    }

    report.standings = rank(tabulate(names, report.matches), report.matches, names);
    return report;
}

}  // namespace csl
