#pragma once

#include <csignal>
#include <filesystem>
#include <ostream>
#include <string>

#include <boost/asio/signal_set.hpp>

#include "csl/service/ws_server.hpp"

namespace csl::cli {

struct ServeCommand {
    std::string host = "127.0.0.1";
    unsigned short port = 8080;
    std::string static_dir;
};

// Serves until SIGINT/SIGTERM. Returns the process exit code.
inline int run_serve_command(const ServeCommand& cmd, const AgentRegistry& registry, std::ostream& out,
                             std::ostream& err) {
    namespace net = service::net;
    try {
        if (!cmd.static_dir.empty() && !std::filesystem::is_directory(cmd.static_dir)) {
            err << "static directory not found: " << cmd.static_dir << "\n";
            return 3;
        }
        net::io_context ioc;
        auto server = std::make_shared<service::Server>(
            ioc, service::tcp::endpoint(net::ip::make_address(cmd.host), cmd.port), registry, cmd.static_dir);
        server->start();
        net::signal_set signals(ioc, SIGINT, SIGTERM);
        signals.async_wait([&](const boost::system::error_code&, int) { ioc.stop(); });
        out << "listening on http://" << cmd.host << ":" << server->port() << "/" << std::endl;
        ioc.run();
        return 0;
    } catch (const std::exception& e) {
        err << "serve failed: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace csl::cli
