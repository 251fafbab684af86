#include "typebot/gateway/log_store.hpp"

#include <cerrno>
#include <cstring>
#include <ctime>

#include <fcntl.h>
#include <unistd.h>

namespace typebot::gateway {

void LogSink::append(const std::vector<MessageRecord>& records, std::int64_t epoch_ms)
{
    if (records.empty()) return;
    std::vector<std::string> lines;
    lines.reserve(records.size());
    for (const auto& r : records) lines.push_back(to_json(r).dump());
    append(lines, epoch_ms);
}

void LogSink::append(const SessionSummary& summary, std::int64_t epoch_ms)
{
    append(std::vector<std::string>{to_json(summary).dump()}, epoch_ms);
}

JsonlLogStore::JsonlLogStore(std::filesystem::path root) : root_(std::move(root)) {}

std::string JsonlLogStore::day_directory(std::int64_t epoch_ms)
{
    const std::time_t seconds = static_cast<std::time_t>(epoch_ms / 1000);
    std::tm utc{};
    gmtime_r(&seconds, &utc);
    char buf[16];
    std::strftime(buf, sizeof buf, "%Y-%m-%d", &utc);
    return buf;
}

void JsonlLogStore::append(const std::vector<std::string>& lines, std::int64_t epoch_ms)
{
    if (lines.empty()) return;
    std::string block;
    for (const auto& l : lines) {
        block += l;
        block += '\n';
    }

    std::lock_guard lock(mutex_);
    const auto dir = root_ / day_directory(epoch_ms);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw PersistenceError("cannot create " + dir.string() + ": " + ec.message());
    const auto file = dir / "conversations.jsonl";
    const int fd = ::open(file.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd < 0) throw PersistenceError("cannot open " + file.string() + ": " + std::strerror(errno));
    std::size_t done = 0;
    while (done < block.size()) {
        const auto n = ::write(fd, block.data() + done, block.size() - done);
        if (n < 0) {
            if (errno == EINTR) continue;
            const int err = errno;
            ::close(fd);
            throw PersistenceError("cannot write " + file.string() + ": " + std::strerror(err));
        }
        done += static_cast<std::size_t>(n);
    }
    ::close(fd);
}

void MemoryLogSink::append(const std::vector<std::string>& lines, std::int64_t)
{
    std::lock_guard lock(mutex_);
    lines_.insert(lines_.end(), lines.begin(), lines.end());
}

std::vector<std::string> MemoryLogSink::lines() const
{
    std::lock_guard lock(mutex_);
    return lines_;
}

} // namespace typebot::gateway
