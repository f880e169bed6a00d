#pragma once

#include <deque>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "csl/service/protocol.hpp"

namespace csl::service {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

inline std::string mime_type(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".html" || ext == ".htm") return "text/html";
    if (ext == ".js" || ext == ".mjs") return "application/javascript";
    if (ext == ".css") return "text/css";
    if (ext == ".json") return "application/json";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".png") return "image/png";
    if (ext == ".ico") return "image/x-icon";
    return "application/octet-stream";
}

// Maps a request target onto a file below `root`. Empty if the target escapes the
// root or names nothing readable.
inline std::optional<std::filesystem::path> resolve_static(const std::filesystem::path& root, std::string_view target) {
    if (root.empty()) return std::nullopt;
    if (auto q = target.find_first_of("?#"); q != std::string_view::npos) target = target.substr(0, q);
    std::string rel(target);
    while (!rel.empty() && rel.front() == '/') rel.erase(rel.begin());
    if (rel.empty()) rel = "index.html";
    const std::filesystem::path candidate = std::filesystem::path(rel).lexically_normal();
    if (candidate.is_absolute() || (!candidate.empty() && *candidate.begin() == "..")) return std::nullopt;
    auto full = root / candidate;
    std::error_code ec;
    if (std::filesystem::is_directory(full, ec)) full /= "index.html";
    if (!std::filesystem::is_regular_file(full, ec)) return std::nullopt;
    return full;
}

// One WebSocket connection: frames in, ProtocolSession replies out through a write
// queue on the connection's strand. Closing the socket abandons the match.
class WsSession : public std::enable_shared_from_this<WsSession> {
public:
    WsSession(tcp::socket&& socket, const AgentRegistry& registry) : ws_(std::move(socket)), registry_(registry) {}

    template <typename Body, typename Allocator>
    void run(http::request<Body, http::basic_fields<Allocator>> req) {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
    }

private:
    void on_accept(beast::error_code ec) {
        if (ec) return;
        std::weak_ptr<WsSession> weak = shared_from_this();
        auto executor = ws_.get_executor();
        protocol_ = std::make_unique<ProtocolSession>(registry_, [weak, executor](std::string text) {
            net::post(executor, [weak, text = std::move(text)]() mutable {
                if (auto self = weak.lock()) self->queue_write(std::move(text));
            });
        });
        read();
    }

    void read() { ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this())); }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec) {
            close_protocol();
            return;
        }
        const std::string frame = beast::buffers_to_string(buffer_.data());
        buffer_.consume(buffer_.size());
        protocol_->handle(frame);
        read();
    }

    void queue_write(std::string text) {
        outbox_.push_back(std::move(text));
        if (outbox_.size() == 1) write_next();
    }

    void write_next() {
        ws_.text(true);
        ws_.async_write(net::buffer(outbox_.front()), beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
    }

    void on_write(beast::error_code ec, std::size_t) {
        if (ec) {
            outbox_.clear();
            return;
        }
        outbox_.pop_front();
        if (!outbox_.empty()) write_next();
    }

    void close_protocol() {
        if (protocol_) protocol_->shutdown();
    }

    websocket::stream<beast::tcp_stream> ws_;
    const AgentRegistry& registry_;
    beast::flat_buffer buffer_;
    std::deque<std::string> outbox_;
    std::unique_ptr<ProtocolSession> protocol_;
};

// Plain HTTP on the same port: static files, or an upgrade to WsSession.
class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket&& socket, const AgentRegistry& registry, std::filesystem::path static_dir)
        : stream_(std::move(socket)), registry_(registry), static_dir_(std::move(static_dir)) {}

    void run() { read(); }

private:
    void read() {
        req_ = {};
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec) return;
        if (websocket::is_upgrade(req_)) {
            stream_.expires_never();
            std::make_shared<WsSession>(stream_.release_socket(), registry_)->run(std::move(req_));
            return;
        }
        respond();
    }

    void respond() {
        auto res = std::make_shared<http::response<http::string_body>>();
        res->version(req_.version());
        res->keep_alive(req_.keep_alive());
        res->set(http::field::server, "csl");
        const auto target = req_.target();
        const auto file = resolve_static(static_dir_, std::string_view(target.data(), target.size()));
        if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
            res->result(http::status::method_not_allowed);
            res->body() = "method not allowed\n";
            res->set(http::field::content_type, "text/plain");
        } else if (!file) {
            res->result(http::status::not_found);
            res->body() = "not found\n";
            res->set(http::field::content_type, "text/plain");
        } else {
            std::ifstream in(*file, std::ios::binary);
            std::ostringstream body;
            body << in.rdbuf();
            res->result(http::status::ok);
            res->set(http::field::content_type, mime_type(*file));
            if (req_.method() == http::verb::get) res->body() = body.str();
        }
        res->prepare_payload();
        http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
            if (ec || !res->keep_alive()) {
                beast::error_code ignored;
                self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                return;
            }
            self->read();
        });
    }

    beast::tcp_stream stream_;
    const AgentRegistry& registry_;
    std::filesystem::path static_dir_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
};

// Accepts connections until the io_context stops. Port 0 picks a free port.
class Server : public std::enable_shared_from_this<Server> {
public:
    Server(net::io_context& ioc, const tcp::endpoint& endpoint, const AgentRegistry& registry,
           std::filesystem::path static_dir)
        : ioc_(ioc), acceptor_(net::make_strand(ioc)), registry_(registry), static_dir_(std::move(static_dir)) {
        acceptor_.open(endpoint.protocol());
        acceptor_.set_option(net::socket_base::reuse_address(true));
        acceptor_.bind(endpoint);
        acceptor_.listen(net::socket_base::max_listen_connections);
    }

    unsigned short port() const { return acceptor_.local_endpoint().port(); }

    void start() { accept(); }

private:
    void accept() {
        acceptor_.async_accept(net::make_strand(ioc_), beast::bind_front_handler(&Server::on_accept, shared_from_this()));
    }

    void on_accept(beast::error_code ec, tcp::socket socket) {
        if (ec == net::error::operation_aborted) return;
        if (!ec) std::make_shared<HttpSession>(std::move(socket), registry_, static_dir_)->run();
        accept();
    }

    net::io_context& ioc_;
    tcp::acceptor acceptor_;
    const AgentRegistry& registry_;
    std::filesystem::path static_dir_;
};

}  // namespace csl::service
