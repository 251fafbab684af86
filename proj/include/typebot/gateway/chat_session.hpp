#pragma once

#include "typebot/agent_config.hpp"
#include "typebot/agent_session.hpp"
#include "typebot/gateway/log_store.hpp"
#include "typebot/gateway/protocol.hpp"
#include "typebot/lexicon.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace typebot::gateway {

struct ChatSessionOptions {
    std::int64_t waiting_min_ms = 5000;
    std::int64_t waiting_max_ms = 15000;
    // Backend, constraints and preset used when the client names only a preset
    // (or sends a config without those sections).
    AgentConfig defaults;
    std::shared_ptr<const Lexicon> lexicon;
    std::shared_ptr<LogSink> sink; // may be null
    // Overrides make_backend, e.g. to inject a failing backend in tests.
    std::function<std::unique_ptr<ResponseBackend>(const BackendBinding&)> backend_factory;
};

// Uniform integer delay in [min_ms, max_ms] drawn from the session seed.
std::int64_t waiting_room_delay(std::uint64_t seed, std::int64_t min_ms, std::int64_t max_ms);

// One client connection. Time is passed in by the caller (epoch ms on a real
// server, a virtual clock in tests); every call returns the newline-terminated
// frames to send, in order. Not thread-safe: the transport serializes calls.
class ChatSession {
public:
    enum class State { AwaitingOpen, Waiting, Ready, Closed };

    ChatSession(ChatSessionOptions options, std::string session_id, std::uint64_t seed);

    std::vector<std::string> on_client(std::string_view line, std::int64_t now_ms);
    // Emits everything due at `now_ms`, answering queued messages when idle.
    std::vector<std::string> poll(std::int64_t now_ms);
    // Earliest time poll() has something to do; nullopt while idle.
    std::optional<std::int64_t> next_deadline() const;
    // Client went away: abandons the in-flight reply and writes the summary.
    std::vector<std::string> close(std::int64_t now_ms);

    State state() const { return state_; }
    const std::string& session_id() const { return session_id_; }
    const AgentSession* agent() const { return agent_.get(); }

private:
    struct Queued {
        std::string text;
        std::int64_t sent_at_ms;
    };
    struct Streaming {
        std::size_t message_id = 0;
        std::int64_t start_ms = 0;
        bool visible = true;
        std::string final_text;
    };

    void handle(const OpenSession& m, std::int64_t now_ms, std::vector<std::string>& out);
    void handle(const UserMessage& m, std::int64_t now_ms, std::vector<std::string>& out);
    void handle(const UpdateParams& m, std::int64_t now_ms, std::vector<std::string>& out);
    void handle(const SetVisibility& m, std::int64_t now_ms, std::vector<std::string>& out);
    void persist(std::int64_t now_ms, std::vector<std::string>& out);
    void step(std::int64_t now_ms, std::vector<std::string>& out);

    ChatSessionOptions options_;
    std::string session_id_;
    std::uint64_t seed_;
    State state_ = State::AwaitingOpen;
    std::int64_t ready_at_ms_ = 0;
    bool show_typing_ = true;
    std::unique_ptr<AgentSession> agent_;
    std::deque<Queued> queue_;
    std::optional<Streaming> streaming_;
};

} // namespace typebot::gateway
