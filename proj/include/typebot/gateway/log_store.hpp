#pragma once

#include "typebot/conversation_log.hpp"

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace typebot::gateway {

class PersistenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Destination for conversation records. Implementations must be safe to
// call from many sessions at once.
class LogSink {
public:
    virtual ~LogSink() = default;
    // Appends JSON lines (without trailing newline). Throws PersistenceError.
    virtual void append(const std::vector<std::string>& lines, std::int64_t epoch_ms) = 0;

    void append(const std::vector<MessageRecord>& records, std::int64_t epoch_ms);
    void append(const SessionSummary& summary, std::int64_t epoch_ms);
};

// <root>/<YYYY-MM-DD>/conversations.jsonl, day taken from the record time in
// UTC. Each append is one write() on an O_APPEND descriptor, so concurrent
// writers never split a line.
class JsonlLogStore : public LogSink {
public:
    explicit JsonlLogStore(std::filesystem::path root);
    using LogSink::append;
    void append(const std::vector<std::string>& lines, std::int64_t epoch_ms) override;

    const std::filesystem::path& root() const { return root_; }
    static std::string day_directory(std::int64_t epoch_ms);

private:
    std::filesystem::path root_;
    std::mutex mutex_;
};

// Keeps lines in memory; used by tests and the offline tools.
class MemoryLogSink : public LogSink {
public:
    using LogSink::append;
    void append(const std::vector<std::string>& lines, std::int64_t epoch_ms) override;
    std::vector<std::string> lines() const;

private:
    mutable std::mutex mutex_;
    std::vector<std::string> lines_;
};

} // namespace typebot::gateway
