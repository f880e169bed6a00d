#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "csl/agents/human.hpp"
#include "csl/agents/registry.hpp"
#include "csl/cli/render.hpp"
#include "csl/match/session.hpp"
#include "csl/solver/solver.hpp"

namespace csl::cli {

// Process exit codes of the match command; session and solve reuse the error codes.
enum ExitCode : int {
    kWhiteWins = 0,
    kRedWins = 1,
    kDraw = 2,
    kUsageError = 3,
    kHarnessFailure = 4,
};

struct MatchCommand {
    std::string white = "minimax";
    std::string red = "minimax";
    std::string white_params;
    std::string red_params;
    GameParams params;
    bool quiet = false;
    std::string transcript_path;  // written when non-empty
};

struct SessionCommand {
    std::string config_path;
    GameParams params;
    int workers = 1;
};

struct SolveCommand {
    GameParams params;
    long long budget = SolveOptions{}.node_budget;
    std::string position_path;  // board text file; empty board when empty
};

inline bool is_human_name(std::string_view name) { return detail::lower(name) == "human"; }

inline int exit_code_for(const MatchResult& r) {
    if (!r.winner) return kDraw;
    return *r.winner == PieceColor::White ? kWhiteWins : kRedWins;
}

inline int run_match_command(const MatchCommand& cmd, const AgentRegistry& registry, std::istream& in,
                             std::ostream& out, std::ostream& err) {
    try {
        cmd.params.validate();
        const MatchConfig config(cmd.params);
        auto make = [&](const std::string& name, const std::string& params) -> std::shared_ptr<Thinker> {
            if (is_human_name(name)) {
                return std::make_shared<HumanThinker>(console_move_source(in, cmd.quiet ? err : out));
            }
            return registry.create(name, params, config);
        };
        auto white = make(cmd.white, cmd.white_params);
        auto red = make(cmd.red, cmd.red_params);

        std::vector<MatchListener> listeners;
        if (!cmd.quiet) listeners.emplace_back(AsciiRenderer(out));
        const MatchResult result = run_match(cmd.params, white, red, listeners);
        out << result_line(result) << "\n";
        if (!cmd.transcript_path.empty()) {
            std::ofstream file(cmd.transcript_path);
            file << format_transcript(result);
            if (!file) {
                err << "cannot write transcript to " << cmd.transcript_path << "\n";
                return kHarnessFailure;
            }
        }
        return exit_code_for(result);
    } catch (const InvalidParams& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kUsageError;
    } catch (const UnknownAgent& e) {
        err << e.what() << "\n";
        return kUsageError;
    } catch (const SetupError& e) {
        err << "agent setup failed: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kHarnessFailure;
    }
}

inline int run_session_command(const SessionCommand& cmd, const AgentRegistry& registry, std::ostream& out,
                               std::ostream& err) {
    try {
        cmd.params.validate();
        std::ifstream file(cmd.config_path);
        if (!file) {
            err << "cannot read session config " << cmd.config_path << "\n";
            return kUsageError;
        }
        SessionConfig config{cmd.params, parse_session_config(file, &registry)};
        SessionOptions options;
        options.workers = cmd.workers;
        const auto report = run_session(config, registry, {},
                                        [&](std::size_t n, const MatchRecord& rec) {
                                            out << format_record(n, rec) << "\n" << std::flush;
                                        },
                                        options);
        out << "\n" << format_standings(report.standings);
        return 0;
    } catch (const InvalidParams& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kUsageError;
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kHarnessFailure;
    }
}

// Prints "<value> <plies> <best moves...>".
inline int run_solve_command(const SolveCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        Board board(cmd.params);
        if (!cmd.position_path.empty()) {
            std::ifstream file(cmd.position_path);
            if (!file) {
                err << "cannot read position " << cmd.position_path << "\n";
                return kUsageError;
            }
            std::ostringstream text;
            text << file.rdbuf();
            board = decode_board(text.str(), cmd.params);
        }
        Solver solver(SolveOptions{cmd.budget, true});
        const auto value = solver.solve(board);
        const auto best = solver.best_moves(board);
        out << to_string(value.value) << " " << value.plies_to_end.value_or(0);
        for (const Move m : best) out << " " << to_notation(m);
        out << "\n";
        return 0;
    } catch (const InvalidParams& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kUsageError;
    } catch (const DecodeError& e) {
        err << "bad position: " << e.what() << "\n";
        return kUsageError;
    } catch (const BudgetExceeded& e) {
        err << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kHarnessFailure;
    }
}

}  // namespace csl::cli
