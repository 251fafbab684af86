#pragma once

#include "typebot/agent_config.hpp"
#include "typebot/backend.hpp"
#include "typebot/conversation_log.hpp"
#include "typebot/lexicon.hpp"
#include "typebot/typing_scheduler.hpp"

#include <json.hpp>

#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace typebot {

struct AgentReply {
    std::size_t index = 0;
    std::string prompt;
    std::string text;
    EventTrace trace;
};

// Text of a reply through the full pipeline: segment, plan, schedule.
EventTrace make_trace(const std::string& text, const TemporalParameters& temporal, const EditingParameters& editing,
                      const Lexicon& lexicon, std::uint64_t seed);

// One conversation with one agent. All members are serialized on an internal
// mutex; emission of the in-flight trace and parameter updates go through the
// same lock so emitted events are never rewritten.
class AgentSession {
public:
    AgentSession(std::string id, AgentConfig config, std::uint64_t seed, std::shared_ptr<const Lexicon> lexicon,
                 std::unique_ptr<ResponseBackend> backend = nullptr);

    const std::string& id() const { return id_; }
    std::uint64_t seed() const { return seed_; }
    AgentConfig config() const;

    // Logs the user message at `now_ms`, asks the backend and schedules the
    // reply with seed derive_seed(session seed, message index). The trace
    // becomes the in-flight trace. On BackendUnavailable the exchange is
    // logged as interrupted and the error is rethrown.
    AgentReply respond(const std::string& user_message, std::int64_t now_ms);
    // Same, for a message that arrived earlier (at `sent_at_ms`) and waited in a queue.
    AgentReply respond(const std::string& user_message, std::int64_t sent_at_ms, std::int64_t now_ms);

    // Logs a user message that will never be answered, with an interrupted agent record.
    void record_unanswered(const std::string& user_message, std::int64_t sent_at_ms, std::int64_t now_ms);

    bool has_in_flight() const;
    // Next unemitted event of the in-flight trace, if any.
    std::optional<KeystrokeEvent> peek_event() const;
    // Marks the next event as emitted and returns it.
    std::optional<KeystrokeEvent> take_event();
    std::size_t emitted() const;
    // Snapshot of the in-flight trace (with any retiming applied).
    std::optional<EventTrace> in_flight() const;

    // Ends the in-flight trace and logs the agent message. Interrupted
    // messages record the text the emitted events produced.
    MessageRecord finish(std::int64_t now_ms, MessageStatus status = MessageStatus::Complete);

    // Validates and applies a live patch. Temporal changes re-time the
    // unemitted tail of the in-flight trace; editing changes take effect from
    // the next message. Throws ValidationError and leaves everything unchanged
    // on a bad patch.
    AgentConfig update_params(const nlohmann::json& patch);

    ConversationLog transcript() const;
    // Records appended since the previous call, for incremental persistence.
    std::vector<MessageRecord> take_unpersisted();

private:
    std::string id_;
    std::uint64_t seed_;
    std::shared_ptr<const Lexicon> lexicon_;
    std::unique_ptr<ResponseBackend> backend_;

    mutable std::mutex mutex_;
    AgentConfig config_;
    std::size_t next_index_ = 0;
    std::optional<EventTrace> trace_;
    std::size_t emitted_ = 0;
    std::int64_t reply_started_ms_ = 0;
    std::size_t reply_index_ = 0;
    ConversationLog log_;
    std::size_t persisted_ = 0;
};

} // namespace typebot
