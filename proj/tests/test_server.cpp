#include "typebot/gateway/server.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <doctest.h>
#include <httplib.h>

#include <chrono>
#include <thread>

using namespace typebot;
using namespace typebot::gateway;

namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;

using Clock = std::chrono::steady_clock;

// Blue pacing without variance, so every event time is known in advance.
ServerOptions exact_options(std::shared_ptr<LogSink> sink)
{
    ServerOptions o;
    o.port = 0;
    o.threads = 2;
    o.seed = 1234;
    o.session.waiting_min_ms = 0;
    o.session.waiting_max_ms = 0;
    o.session.sink = std::move(sink);
    auto& c = o.session.defaults;
    c = preset_config(Preset::Blue);
    c.temporal.character_typing = {15, 0};
    c.temporal.space_lag = {20, 0};
    c.backend.kind = BackendKind::Echo;
    return o;
}

class Client {
public:
    explicit Client(unsigned short port) : ws_(io_)
    {
        asio::ip::tcp::resolver resolver(io_);
        asio::connect(ws_.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
        ws_.handshake("127.0.0.1", "/chat");
        ws_.text(true);
    }
    void send(const std::string& line) { ws_.write(asio::buffer(line)); }
    std::string read()
    {
        beast::flat_buffer buf;
        ws_.read(buf);
        return beast::buffers_to_string(buf.data());
    }
    void close() { ws_.close(websocket::close_code::normal); }

private:
    asio::io_context io_;
    websocket::stream<asio::ip::tcp::socket> ws_;
};

} // namespace

TEST_CASE("loopback server streams events on the wall clock")
{
    auto sink = std::make_shared<MemoryLogSink>();
    ChatServer server(exact_options(sink));
    server.start();
    REQUIRE(server.port() != 0);

    {
        Client client(server.port());
        client.send("{\"type\":\"open_session\"}\n");
        const auto waiting = parse_server_message(client.read());
        CHECK(std::get<WaitingRoom>(waiting).delay_ms == 0);
        const auto ready = parse_server_message(client.read());
        CHECK(std::get<SessionReady>(ready).session_id.rfind("s-", 0) == 0);

        const std::string text = "hello there my friend";
        const auto sent = Clock::now();
        client.send("{\"type\":\"user_message\",\"text\":\"" + text + "\"}\n");
        std::vector<KeystrokeEvent> keys;
        std::vector<Clock::time_point> arrivals;
        for (;;) {
            const auto line = client.read();
            const auto arrived = Clock::now();
            REQUIRE(line.back() == '\n');
            const auto msg = parse_server_message(line);
            if (std::holds_alternative<TraceDone>(msg)) break;
            keys.push_back(std::get<EventMessage>(msg).event);
            arrivals.push_back(arrived);
        }
        // Gaps between consecutive events follow the trace deltas.
        double worst = 0;
        for (std::size_t i = 1; i < keys.size(); ++i) {
            const double gap = std::chrono::duration<double, std::milli>(arrivals[i] - arrivals[i - 1]).count();
            worst = std::max(worst, std::abs(gap - static_cast<double>(keys[i].t_ms - keys[i - 1].t_ms)));
        }
        CHECK(std::chrono::duration<double, std::milli>(arrivals.back() - sent).count() >=
              static_cast<double>(keys.back().t_ms) - 15.0);
        CHECK(apply_trace(keys) == text);
        // 21 characters at 15 ms plus a 20 ms lag before each of the 4 words.
        CHECK(keys.back().t_ms == 15 * 21 + 20 * 4);
        CHECK(worst <= 15.0);
        client.close();
    }

    for (int i = 0; i < 200 && sink->lines().size() < 3; ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
    const auto lines = sink->lines();
    REQUIRE(lines.size() == 3);
    CHECK(nlohmann::json::parse(lines[2])["type"] == "session");
    server.stop();
}

TEST_CASE("loopback server answers health checks and 404s")
{
    ChatServer server(exact_options(nullptr));
    server.start();
    httplib::Client http("127.0.0.1", server.port());
    auto health = http.Get("/healthz");
    REQUIRE(health);
    CHECK(health->status == 200);
    auto missing = http.Get("/nope");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    server.stop();
}
