#pragma once

#include "typebot/gateway/chat_session.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace typebot::gateway {

struct ServerOptions {
    std::string address = "127.0.0.1";
    unsigned short port = 8080; // 0 picks a free port
    int threads = 4;
    // Sessions get seed derive_seed(seed, connection number) unless the client
    // supplies one; without a seed the connection seeds come from random_device.
    std::optional<std::uint64_t> seed;
    ChatSessionOptions session;
};

// WebSocket endpoint at /chat carrying the JSON-lines protocol: every server
// record is one text frame ending in '\n'; client frames may hold one or more
// newline-separated records. Other paths answer 404, GET /healthz answers 200.
// Backend calls run on the I/O threads, so a slow remote backend occupies one
// of `threads` while it waits.
class ChatServer {
public:
    explicit ChatServer(ServerOptions options);
    ~ChatServer();

    ChatServer(const ChatServer&) = delete;
    ChatServer& operator=(const ChatServer&) = delete;

    // Binds and starts the worker threads. Throws std::runtime_error when the
    // address cannot be bound.
    void start();
    unsigned short port() const;
    void stop();
    // Blocks until stop() is called from another thread or a signal handler.
    void wait();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace typebot::gateway
