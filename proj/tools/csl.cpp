#include <iostream>

#include <CLI11.hpp>

#include "csl/cli/commands.hpp"
#include "csl/cli/serve.hpp"

namespace {

void add_game_flags(CLI::App& cmd, csl::GameParams& p, int& time_limit_ms) {
    cmd.add_option("--rows", p.rows, "Board rows")->capture_default_str();
    cmd.add_option("--cols", p.cols, "Board columns")->capture_default_str();
    cmd.add_option("--win", p.win_length, "Pieces in a row needed to win")->capture_default_str();
    cmd.add_option("--squares", p.squares, "Square pieces per player")->capture_default_str();
    cmd.add_option("--rounds", p.rounds, "Round pieces per player")->capture_default_str();
    cmd.add_option("--time-limit-ms", time_limit_ms, "Thinking time per move")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    const auto registry = csl::AgentRegistry::with_baselines();

    CLI::App app{"ColorShapeLinks: Simplexity matches, sessions, solver and play server"};
    app.require_subcommand(1);

    std::string agents_help = "Agent: human or one of";
    for (const auto& n : registry.names()) agents_help += " " + n;

    csl::cli::MatchCommand match;
    int match_limit = 200;
    std::string render = "ascii";
    auto* match_cmd = app.add_subcommand("match", "Play one match");
    match_cmd->add_option("--white", match.white, agents_help)->capture_default_str();
    match_cmd->add_option("--red", match.red, agents_help)->capture_default_str();
    match_cmd->add_option("--white-params", match.white_params, "Params string for White, e.g. depth=4");
    match_cmd->add_option("--red-params", match.red_params, "Params string for Red, e.g. seed=1");
    add_game_flags(*match_cmd, match.params, match_limit);
    match_cmd->add_option("--render", render, "Output mode")
        ->check(CLI::IsMember({"ascii", "quiet"}))
        ->capture_default_str();
    match_cmd->add_option("--transcript", match.transcript_path, "Write the move transcript to FILE");

    csl::cli::SessionCommand session;
    int session_limit = 200;
    auto* session_cmd = app.add_subcommand("session", "Run a round-robin session from a config file");
    session_cmd->add_option("config", session.config_path, "Session config file")->required();
    add_game_flags(*session_cmd, session.params, session_limit);
    session_cmd->add_option("--workers", session.workers, "Concurrent matches for isolated agents")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    csl::cli::SolveCommand solve;
    int solve_limit = 200;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a small instance exactly");
    add_game_flags(*solve_cmd, solve.params, solve_limit);
    solve_cmd->add_option("--budget", solve.budget, "Node budget before refusing")->capture_default_str();
    solve_cmd->add_option("--position", solve.position_path, "Board text file to solve instead of the empty board");

    csl::cli::ServeCommand serve;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the web UI and the play protocol");
    serve_cmd->add_option("--host", serve.host, "Address to bind")->capture_default_str();
    serve_cmd->add_option("--port", serve.port, "Port, 0 for any free port")->capture_default_str();
    serve_cmd->add_option("--static-dir", serve.static_dir, "Directory with the built web UI");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return csl::cli::kUsageError;
    }

    if (*match_cmd) {
        match.params.time_limit = std::chrono::milliseconds{match_limit};
        match.quiet = render == "quiet";
        return csl::cli::run_match_command(match, registry, std::cin, std::cout, std::cerr);
    }
    if (*session_cmd) {
        session.params.time_limit = std::chrono::milliseconds{session_limit};
        return csl::cli::run_session_command(session, registry, std::cout, std::cerr);
    }
    if (*solve_cmd) {
        solve.params.time_limit = std::chrono::milliseconds{solve_limit};
        return csl::cli::run_solve_command(solve, std::cout, std::cerr);
    }
    return csl::cli::run_serve_command(serve, registry, std::cout, std::cerr);
}
