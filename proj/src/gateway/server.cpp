#include "typebot/gateway/server.hpp"

#include "typebot/random.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <iostream>
#include <random>
#include <thread>

namespace typebot::gateway {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

std::int64_t now_ms()
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::string session_name(std::uint64_t seed)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "s-%016llx", static_cast<unsigned long long>(seed));
    return buf;
}

class Connection : public std::enable_shared_from_this<Connection> {
public:
    Connection(tcp::socket socket, const ChatSessionOptions& options, std::uint64_t seed)
        : ws_(std::move(socket)),
          timer_(ws_.get_executor()),
          chat_(options, session_name(seed), seed)
    {
    }

    ~Connection()
    {
        if (!closed_) chat_.close(now_ms());
    }

    void run(http::request<http::string_body> request)
    {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.text(true);
        ws_.async_accept(request, beast::bind_front_handler(&Connection::on_accept, shared_from_this()));
    }

private:
    void on_accept(beast::error_code ec)
    {
        if (ec) return;
        read();
    }

    void read()
    {
        ws_.async_read(buffer_, beast::bind_front_handler(&Connection::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t)
    {
        if (ec) {
            shutdown();
            return;
        }
        const std::string data = beast::buffers_to_string(buffer_.data());
        buffer_.consume(buffer_.size());
        std::size_t start = 0;
        while (start < data.size()) {
            auto end = data.find('\n', start);
            if (end == std::string::npos) end = data.size();
            std::string_view line(data.data() + start, end - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.find_first_not_of(" \t") != std::string_view::npos) enqueue(chat_.on_client(line, now_ms()));
            start = end + 1;
        }
        arm_timer();
        read();
    }

    void arm_timer()
    {
        const auto deadline = chat_.next_deadline();
        timer_.cancel();
        if (!deadline) return;
        const auto wait = std::max<std::int64_t>(*deadline - now_ms(), 0);
        timer_.expires_after(std::chrono::milliseconds(wait));
        timer_.async_wait([self = shared_from_this()](beast::error_code ec) {
            if (ec || self->closed_) return;
            self->enqueue(self->chat_.poll(now_ms()));
            self->arm_timer();
        });
    }

    void enqueue(std::vector<std::string> frames)
    {
        if (closed_) return;
        for (auto& f : frames) outbox_.push_back(std::move(f));
        if (!writing_) write_next();
    }

    void write_next()
    {
        if (outbox_.empty() || closed_) {
            writing_ = false;
            return;
        }
        writing_ = true;
        ws_.async_write(asio::buffer(outbox_.front()),
                        [self = shared_from_this()](beast::error_code ec, std::size_t) {
                            self->outbox_.pop_front();
                            if (ec) {
                                self->shutdown();
                                return;
                            }
                            self->write_next();
                        });
    }

    void shutdown()
    {
        if (closed_) return;
        closed_ = true;
        timer_.cancel();
        chat_.close(now_ms());
    }

    websocket::stream<beast::tcp_stream> ws_;
    asio::steady_timer timer_;
    beast::flat_buffer buffer_;
    std::deque<std::string> outbox_;
    bool writing_ = false;
    bool closed_ = false;
    ChatSession chat_;
};

// Reads the HTTP request; upgrades /chat, answers everything else directly.
class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket socket, const ChatSessionOptions& options, std::uint64_t seed)
        : stream_(std::move(socket)), options_(options), seed_(seed)
    {
    }

    void run()
    {
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, request_,
                         beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
    }

private:
    void on_read(beast::error_code ec, std::size_t)
    {
        if (ec) return;
        const auto target = std::string(request_.target());
        if (websocket::is_upgrade(request_) && target == "/chat") {
            stream_.expires_never();
            std::make_shared<Connection>(stream_.release_socket(), options_, seed_)->run(std::move(request_));
            return;
        }
        auto response = std::make_shared<http::response<http::string_body>>();
        response->version(request_.version());
        response->keep_alive(false);
        response->set(http::field::content_type, "text/plain");
        if (target == "/healthz") {
            response->result(http::status::ok);
            response->body() = "ok\n";
        } else {
            response->result(http::status::not_found);
            response->body() = "not found\n";
        }
        response->prepare_payload();
        http::async_write(stream_, *response, [self = shared_from_this(), response](beast::error_code, std::size_t) {
            beast::error_code ignored;
            self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        });
    }

    beast::tcp_stream stream_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> request_;
    const ChatSessionOptions& options_;
    std::uint64_t seed_;
};

} // namespace

struct ChatServer::Impl {
    explicit Impl(ServerOptions o) : options(std::move(o)), io(std::max(1, options.threads)), acceptor(io) {}

    void accept()
    {
        acceptor.async_accept(asio::make_strand(io), [this](beast::error_code ec, tcp::socket socket) {
            if (ec) {
                if (acceptor.is_open()) accept();
                return;
            }
            // Keystroke frames are tiny and time-critical; don't let Nagle batch them.
            beast::error_code ignored;
            socket.set_option(tcp::no_delay(true), ignored);
            const std::uint64_t n = connections++;
            const std::uint64_t seed = options.seed ? derive_seed(*options.seed, n) : random_seed();
            std::make_shared<HttpSession>(std::move(socket), options.session, seed)->run();
            accept();
        });
    }

    std::uint64_t random_seed()
    {
        std::lock_guard lock(seed_mutex);
        return (static_cast<std::uint64_t>(device()) << 32) ^ device();
    }

    ServerOptions options;
    asio::io_context io;
    tcp::acceptor acceptor;
    std::vector<std::thread> threads;
    std::atomic<std::uint64_t> connections{0};
    std::mutex seed_mutex;
    std::random_device device;
    std::mutex stop_mutex;
    std::condition_variable stopped_cv;
    bool stopped = false;
};

ChatServer::ChatServer(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

ChatServer::~ChatServer()
{
    stop();
}

void ChatServer::start()
{
    auto& i = *impl_;
    beast::error_code ec;
    const auto address = asio::ip::make_address(i.options.address, ec);
    if (ec) throw std::runtime_error("bad listen address " + i.options.address + ": " + ec.message());
    const tcp::endpoint endpoint(address, i.options.port);
    i.acceptor.open(endpoint.protocol(), ec);
    if (!ec) i.acceptor.set_option(asio::socket_base::reuse_address(true), ec);
    if (!ec) i.acceptor.bind(endpoint, ec);
    if (!ec) i.acceptor.listen(asio::socket_base::max_listen_connections, ec);
    if (ec) throw std::runtime_error("cannot listen on " + i.options.address + ":" + std::to_string(i.options.port) +
                                     ": " + ec.message());
    i.accept();
    const int n = std::max(1, i.options.threads);
    for (int t = 0; t < n; ++t) i.threads.emplace_back([&io = i.io] { io.run(); });
}

unsigned short ChatServer::port() const
{
    beast::error_code ec;
    const auto endpoint = impl_->acceptor.local_endpoint(ec);
    return ec ? 0 : endpoint.port();
}

void ChatServer::stop()
{
    auto& i = *impl_;
    {
        std::lock_guard lock(i.stop_mutex);
        if (i.stopped) return;
        i.stopped = true;
    }
    i.io.stop();
    for (auto& t : i.threads) {
        if (t.joinable() && t.get_id() != std::this_thread::get_id()) t.join();
    }
    beast::error_code ignored;
    i.acceptor.close(ignored);
    i.stopped_cv.notify_all();
}

void ChatServer::wait()
{
    auto& i = *impl_;
    std::unique_lock lock(i.stop_mutex);
    i.stopped_cv.wait(lock, [&i] { return i.stopped; });
}

} // namespace typebot::gateway
