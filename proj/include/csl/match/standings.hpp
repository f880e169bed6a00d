#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csl/match/match_result.hpp"

namespace csl {

struct StandingsRow {
    std::string name;
    int points = 0;
    int wins = 0;
    int draws = 0;
    int losses = 0;
    int played = 0;
};

// One finished match of a session, by entrant index.
struct MatchRecord {
    std::size_t white = 0;
    std::size_t red = 0;
    MatchResult result;
};

struct Standings {
    std::vector<StandingsRow> rows;  // ranked order after rank()
};

// Points table in entrant order (unranked).
inline Standings tabulate(const std::vector<std::string>& names, const std::vector<MatchRecord>& records) {
    Standings s;
    for (const auto& n : names) s.rows.push_back({n});
    for (const auto& rec : records) {
        for (auto [idx, seat] : {std::pair{rec.white, PieceColor::White}, std::pair{rec.red, PieceColor::Red}}) {
            auto& row = s.rows.at(idx);
            const int pts = score(rec.result, seat);
            row.points += pts;
            ++row.played;
            if (pts == kPointsWin) {
                ++row.wins;
            } else if (pts == kPointsDraw) {
                ++row.draws;
            } else {
                ++row.losses;
            }
        }
    }
    return s;
}

// Total order: points, then wins, then points earned in matches among the tied group,
// then name (all descending except the name).
inline Standings rank(Standings standings, const std::vector<MatchRecord>& records,
                      const std::vector<std::string>& entrant_names) {
    auto& rows = standings.rows;
    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < entrant_names.size(); ++i) index_of[entrant_names[i]] = i;

    std::map<std::pair<int, int>, std::vector<std::string>> groups;
    for (const auto& r : rows) groups[{r.points, r.wins}].push_back(r.name);

    std::map<std::string, int> head_to_head;
    for (const auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        std::vector<std::size_t> ids;
        for (const auto& m : members) ids.push_back(index_of.at(m));
        auto in_group = [&](std::size_t i) { return std::find(ids.begin(), ids.end(), i) != ids.end(); };
        for (const auto& rec : records) {
            if (!in_group(rec.white) || !in_group(rec.red)) continue;
            head_to_head[entrant_names[rec.white]] += score(rec.result, PieceColor::White);
            head_to_head[entrant_names[rec.red]] += score(rec.result, PieceColor::Red);
        }
    }
    auto h2h = [&](const std::string& n) {
        auto it = head_to_head.find(n);
        return it == head_to_head.end() ? 0 : it->second;
    };
    std::sort(rows.begin(), rows.end(), [&](const StandingsRow& a, const StandingsRow& b) {
        if (a.points != b.points) return a.points > b.points;
        if (a.wins != b.wins) return a.wins > b.wins;
        if (h2h(a.name) != h2h(b.name)) return h2h(a.name) > h2h(b.name);
        return a.name < b.name;
    });
    return standings;
}

inline std::string format_standings(const Standings& s) {
    std::size_t width = 4;
    for (const auto& r : s.rows) width = std::max(width, r.name.size());
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s  %-*s  %4s  %3s  %3s  %3s  %3s\n", "Rank", static_cast<int>(width), "Name", "Pts",
                  "W", "D", "L", "P");
    out += buf;
    int place = 1;
    for (const auto& r : s.rows) {
        std::snprintf(buf, sizeof buf, "%-4d  %-*s  %4d  %3d  %3d  %3d  %3d\n", place++, static_cast<int>(width),
                      r.name.c_str(), r.points, r.wins, r.draws, r.losses, r.played);
        out += buf;
    }
    return out;
}

// One machine-readable line per match.
inline std::string format_record(std::size_t number, const MatchRecord& rec) {
    const auto& res = rec.result;
    return "match=" + std::to_string(number) + " white=" + res.white_name + " red=" + res.red_name +
           " reason=" + to_string(res.reason) + " winner=" + (res.winner ? to_string(*res.winner) : "none") +
           " moves=" + std::to_string(res.moves());
}

}  // namespace csl
