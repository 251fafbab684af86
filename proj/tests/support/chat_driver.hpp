#pragma once

// Drives a ChatSession on a virtual clock and records every frame with the
// time it was produced.

#include "typebot/gateway/chat_session.hpp"

#include <limits>
#include <string>
#include <vector>

namespace typebot::testing {

struct TimedFrame {
    std::int64_t at_ms = 0;
    std::string line;
    gateway::ServerMessage message;
};

class ChatDriver {
public:
    ChatDriver(gateway::ChatSessionOptions options, std::string id, std::uint64_t seed)
        : session_(std::move(options), std::move(id), seed)
    {
    }

    void send(const gateway::ClientMessage& m) { send_line(gateway::frame(m)); }
    void send_line(const std::string& line)
    {
        auto text = line;
        if (!text.empty() && text.back() == '\n') text.pop_back();
        record(session_.on_client(text, now_));
    }

    // Runs until nothing is scheduled or the clock passes `limit_ms`.
    void run(std::int64_t limit_ms = std::numeric_limits<std::int64_t>::max())
    {
        while (auto d = session_.next_deadline()) {
            if (*d > limit_ms) {
                now_ = limit_ms;
                break;
            }
            now_ = std::max(now_, *d);
            record(session_.poll(now_));
        }
    }
    void advance_to(std::int64_t t) { run(t); now_ = std::max(now_, t); }
    void close() { record(session_.close(now_)); }

    std::int64_t now() const { return now_; }
    gateway::ChatSession& session() { return session_; }
    const std::vector<TimedFrame>& frames() const { return frames_; }
    std::string transcript() const
    {
        std::string s;
        for (const auto& f : frames_) s += f.line;
        return s;
    }
    template <typename T>
    std::vector<T> of_type() const
    {
        std::vector<T> out;
        for (const auto& f : frames_) {
            if (auto* p = std::get_if<T>(&f.message)) out.push_back(*p);
        }
        return out;
    }

private:
    void record(const std::vector<std::string>& lines)
    {
        for (const auto& l : lines) frames_.push_back({now_, l, gateway::parse_server_message(l)});
    }

    gateway::ChatSession session_;
    std::int64_t now_ = 0;
    std::vector<TimedFrame> frames_;
};

} // namespace typebot::testing
