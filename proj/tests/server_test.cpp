#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "csl/service/ws_server.hpp"

namespace csl {
namespace {

namespace fs = std::filesystem;
namespace net = service::net;
namespace beast = service::beast;
namespace http = service::http;
namespace websocket = service::websocket;
using service::tcp;
using json = nlohmann::json;

class ServerFixture : public ::testing::Test {
protected:
    void SetUp() override {
        static_dir_ = fs::temp_directory_path() / ("csl_static_" + std::to_string(::getpid()));
        fs::create_directories(static_dir_ / "assets");
        std::ofstream(static_dir_ / "index.html") << "<html>board</html>";
        std::ofstream(static_dir_ / "assets" / "app.js") << "console.log(1);";
        server_ = std::make_shared<service::Server>(ioc_, tcp::endpoint(net::ip::make_address("127.0.0.1"), 0),
                                                    registry_, static_dir_);
        server_->start();
        thread_ = std::thread([this] { ioc_.run(); });
    }

    void TearDown() override {
        ioc_.stop();
        thread_.join();
        fs::remove_all(static_dir_);
    }

    http::response<http::string_body> get(const std::string& target) {
        net::io_context ioc;
        beast::tcp_stream stream(ioc);
        stream.connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), server_->port()));
        http::request<http::empty_body> req{http::verb::get, target, 11};
        req.set(http::field::host, "localhost");
        http::write(stream, req);
        beast::flat_buffer buffer;
        http::response<http::string_body> res;
        http::read(stream, buffer, res);
        beast::error_code ec;
        stream.socket().shutdown(tcp::socket::shutdown_both, ec);
        return res;
    }

    AgentRegistry registry_ = AgentRegistry::with_baselines();
    net::io_context ioc_;
    std::shared_ptr<service::Server> server_;
    std::thread thread_;
    fs::path static_dir_;
};

struct Client {
    net::io_context ioc;
    websocket::stream<beast::tcp_stream> ws{ioc};

    explicit Client(unsigned short port) {
        ws.next_layer().connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), port));
        ws.handshake("localhost", "/ws");
    }

    void send(const json& j) { ws.write(net::buffer(j.dump())); }

    json receive() {
        beast::flat_buffer buffer;
        ws.read(buffer);
        return json::parse(beast::buffers_to_string(buffer.data()));
    }

    json receive(const std::string& type) {
        for (;;) {
            json j = receive();
            if (j["type"] == type) return j;
        }
    }
};

TEST_F(ServerFixture, ServesStaticFiles) {
    auto res = get("/");
    EXPECT_EQ(res.result(), http::status::ok);
    EXPECT_EQ(res.body(), "<html>board</html>");
    EXPECT_EQ(res[http::field::content_type], "text/html");
    res = get("/assets/app.js?v=2");
    EXPECT_EQ(res.result(), http::status::ok);
    EXPECT_EQ(res[http::field::content_type], "application/javascript");
    EXPECT_EQ(get("/missing.css").result(), http::status::not_found);
    EXPECT_EQ(get("/../../etc/passwd").result(), http::status::not_found);
}

TEST(StaticResolution, StaysInsideRoot) {
    const auto root = fs::temp_directory_path();
    EXPECT_FALSE(service::resolve_static(root, "/../etc/passwd"));
    EXPECT_FALSE(service::resolve_static(root, "/a/../../x"));
    EXPECT_FALSE(service::resolve_static("", "/index.html"));
}

TEST_F(ServerFixture, HumanCompletesAMatchAgainstMinimax) {
    Client client(server_->port());
    GameParams p;
    p.rows = 4;
    p.cols = 5;
    p.win_length = 3;
    client.send({{"type", "NewMatch"},
                 {"white", "human"},
                 {"red", "minimax"},
                 {"red_params", "depth=2"},
                 {"params", {{"rows", 4}, {"cols", 5}, {"win", 3}, {"time_limit_ms", 1000}}}});

    Board engine(p);
    json state = client.receive("State");
    EXPECT_EQ(state["legal_moves"].size(), 10u);
    int human_moves = 0;
    while (state["outcome"]["status"] == "InProgress") {
        const Board shown = decode_board(state["board"].get<std::string>(), p);
        EXPECT_EQ(encode_board(shown), encode_board(engine));
        if (state["to_move"] == "White") {
            const auto m = *parse_move(state["legal_moves"].back().get<std::string>());
            client.send({{"type", "HumanMove"}, {"column", m.column}, {"shape", m.shape == PieceShape::Round ? "round" : "square"}});
            ++human_moves;
        }
        state = client.receive("State");
        const auto& last = state["last_move"];
        ASSERT_FALSE(last.is_null());
        const Move applied{last["column"].get<int>(),
                           last["shape"] == "round" ? PieceShape::Round : PieceShape::Square};
        EXPECT_EQ(engine.do_move(applied), last["row"].get<int>());
    }
    EXPECT_GT(human_moves, 0);
    EXPECT_EQ(state["board"].get<std::string>(), encode_board(engine));
    const Outcome outcome = engine.check_winner();
    ASSERT_TRUE(outcome.terminal());
    if (outcome.status == Status::Win) {
        EXPECT_EQ(state["outcome"]["winner"], to_string(*outcome.winner));
        EXPECT_EQ(state["outcome"]["reason"], "LineWin");
    } else {
        EXPECT_EQ(state["outcome"]["status"], "Draw");
    }
    client.send({{"type", "HumanMove"}, {"column", 0}, {"shape", "round"}});
    EXPECT_EQ(client.receive("Error")["reason"], "match is over");
    client.ws.close(websocket::close_code::normal);
}

TEST_F(ServerFixture, ConnectionsAreIndependent) {
    Client a(server_->port());
    Client b(server_->port());
    a.send({{"type", "NewMatch"}, {"white", "human"}, {"red", "sequential"}});
    b.send({{"type", "NewMatch"}, {"white", "sequential"}, {"red", "human"}});
    EXPECT_EQ(a.receive("State")["to_move"], "White");
    b.receive("State");
    EXPECT_EQ(b.receive("State")["to_move"], "Red");
    a.send({{"type", "HumanMove"}, {"column", 9}, {"shape", "round"}});
    EXPECT_EQ(a.receive("Error")["reason"], "column out of range");
}

TEST_F(ServerFixture, DisconnectMidMatchIsHarmless) {
    {
        Client c(server_->port());
        c.send({{"type", "NewMatch"}, {"white", "human"}, {"red", "minimax"}});
        c.receive("State");
        beast::error_code ec;
        c.ws.next_layer().socket().close(ec);
    }
    Client again(server_->port());
    again.send({{"type", "NewMatch"}, {"white", "human"}, {"red", "minimax"}});
    EXPECT_EQ(again.receive("State")["legal_moves"].size(), 14u);
}

}  // namespace
}  // namespace csl
