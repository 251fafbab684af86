#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace typebot {

inline constexpr int kLogSchemaVersion = 1;

enum class Sender { User, Agent };
enum class MessageStatus { Complete, Interrupted };

const char* to_string(Sender sender);
const char* to_string(MessageStatus status);

class LogFormatError : public std::runtime_error {
public:
    LogFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("log line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Timestamps are milliseconds on the gateway clock (epoch ms in production,
// virtual ms in tests).
struct MessageRecord {
    std::string session_id;
    std::string preset;
    std::size_t index = 0;
    Sender sender = Sender::User;
    std::string text;
    std::size_t words = 0;
    std::size_t sentences = 0;
    std::int64_t sent_at_ms = 0;
    std::int64_t completed_at_ms = 0;
    MessageStatus status = MessageStatus::Complete;

    friend bool operator==(const MessageRecord&, const MessageRecord&) = default;
};

struct SessionSummary {
    std::string session_id;
    std::string preset;
    std::size_t messages = 0;
    std::size_t user_words = 0;
    std::size_t user_sentences = 0;
    std::size_t agent_words = 0;
    std::size_t agent_sentences = 0;
    std::int64_t started_at_ms = 0;
    std::int64_t ended_at_ms = 0;
    double duration_seconds = 0.0;

    friend bool operator==(const SessionSummary&, const SessionSummary&) = default;
};

struct ConversationLog {
    std::string session_id;
    std::string preset;
    std::vector<MessageRecord> messages;
    std::optional<SessionSummary> summary;
};

// Builds a record with word and sentence counts taken from the segmenter.
MessageRecord make_message(std::string session_id, std::string preset, std::size_t index, Sender sender,
                           std::string text, std::int64_t sent_at_ms, std::int64_t completed_at_ms,
                           MessageStatus status = MessageStatus::Complete);

// Totals over the messages. Duration runs from the first user message to the
// completion of the last agent message (0 when either is missing).
SessionSummary summarize(const ConversationLog& log);

nlohmann::ordered_json to_json(const MessageRecord& record);
nlohmann::ordered_json to_json(const SessionSummary& summary);
MessageRecord message_from_json(const nlohmann::json& j);
SessionSummary summary_from_json(const nlohmann::json& j);

// Groups records by session id in order of first appearance. Throws
// LogFormatError naming the 1-based line on malformed input or an unknown
// schema version.
std::vector<ConversationLog> read_logs(std::istream& in);

// Reads one .jsonl file, or every .jsonl file below a directory in path order.
std::vector<ConversationLog> read_log_path(const std::filesystem::path& path);

} // namespace typebot
