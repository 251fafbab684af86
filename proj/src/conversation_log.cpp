#include "typebot/conversation_log.hpp"

#include "typebot/segmenter.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>

namespace typebot {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(Sender sender)
{
    return sender == Sender::User ? "user" : "agent";
}

const char* to_string(MessageStatus status)
{
    return status == MessageStatus::Complete ? "complete" : "interrupted";
}

MessageRecord make_message(std::string session_id, std::string preset, std::size_t index, Sender sender,
                           std::string text, std::int64_t sent_at_ms, std::int64_t completed_at_ms,
                           MessageStatus status)
{
    MessageRecord r;
    r.session_id = std::move(session_id);
    r.preset = std::move(preset);
    r.index = index;
    r.sender = sender;
    r.words = word_count(text);
    r.sentences = sentence_count(text);
    r.text = std::move(text);
    r.sent_at_ms = sent_at_ms;
    r.completed_at_ms = std::max(completed_at_ms, sent_at_ms);
    r.status = status;
    return r;
}

SessionSummary summarize(const ConversationLog& log)
{
    SessionSummary s;
    s.session_id = log.session_id;
    s.preset = log.preset;
    s.messages = log.messages.size();
    std::optional<std::int64_t> first_user;
    std::optional<std::int64_t> last_agent;
    for (const auto& m : log.messages) {
        if (m.sender == Sender::User) {
            s.user_words += m.words;
            s.user_sentences += m.sentences;
            if (!first_user || m.sent_at_ms < *first_user) first_user = m.sent_at_ms;
        } else {
            s.agent_words += m.words;
            s.agent_sentences += m.sentences;
            if (!last_agent || m.completed_at_ms > *last_agent) last_agent = m.completed_at_ms;
        }
    }
    if (first_user && last_agent && *last_agent >= *first_user) {
        s.started_at_ms = *first_user;
        s.ended_at_ms = *last_agent;
        s.duration_seconds = static_cast<double>(*last_agent - *first_user) / 1000.0;
    } else if (first_user) {
        s.started_at_ms = s.ended_at_ms = *first_user;
    }
    return s;
}

ordered_json to_json(const MessageRecord& r)
{
    return {{"schema", kLogSchemaVersion},
            {"type", "message"},
            {"sessionId", r.session_id},
            {"preset", r.preset},
            {"index", r.index},
            {"sender", to_string(r.sender)},
            {"text", r.text},
            {"words", r.words},
            {"sentences", r.sentences},
            {"sentAt", r.sent_at_ms},
            {"completedAt", r.completed_at_ms},
            {"status", to_string(r.status)}};
}

ordered_json to_json(const SessionSummary& s)
{
    return {{"schema", kLogSchemaVersion},
            {"type", "session"},
            {"sessionId", s.session_id},
            {"preset", s.preset},
            {"messages", s.messages},
            {"userWords", s.user_words},
            {"userSentences", s.user_sentences},
            {"agentWords", s.agent_words},
            {"agentSentences", s.agent_sentences},
            {"startedAt", s.started_at_ms},
            {"endedAt", s.ended_at_ms},
            {"durationSeconds", s.duration_seconds}};
}

MessageRecord message_from_json(const json& j)
{
    MessageRecord r;
    r.session_id = j.at("sessionId").get<std::string>();
    r.preset = j.at("preset").get<std::string>();
    r.index = j.at("index").get<std::size_t>();
    const auto sender = j.at("sender").get<std::string>();
    if (sender == "user") {
        r.sender = Sender::User;
    } else if (sender == "agent") {
        r.sender = Sender::Agent;
    } else {
        throw std::invalid_argument("unknown sender '" + sender + "'");
    }
    r.text = j.at("text").get<std::string>();
    r.words = j.at("words").get<std::size_t>();
    r.sentences = j.at("sentences").get<std::size_t>();
    r.sent_at_ms = j.at("sentAt").get<std::int64_t>();
    r.completed_at_ms = j.at("completedAt").get<std::int64_t>();
    const auto status = j.value("status", std::string("complete"));
    if (status == "complete") {
        r.status = MessageStatus::Complete;
    } else if (status == "interrupted") {
        r.status = MessageStatus::Interrupted;
    } else {
        throw std::invalid_argument("unknown status '" + status + "'");
    }
    return r;
}

SessionSummary summary_from_json(const json& j)
{
    SessionSummary s;
    s.session_id = j.at("sessionId").get<std::string>();
    s.preset = j.at("preset").get<std::string>();
    s.messages = j.at("messages").get<std::size_t>();
    s.user_words = j.at("userWords").get<std::size_t>();
    s.user_sentences = j.at("userSentences").get<std::size_t>();
    s.agent_words = j.at("agentWords").get<std::size_t>();
    s.agent_sentences = j.at("agentSentences").get<std::size_t>();
    s.started_at_ms = j.at("startedAt").get<std::int64_t>();
    s.ended_at_ms = j.at("endedAt").get<std::int64_t>();
    s.duration_seconds = j.at("durationSeconds").get<double>();
    return s;
}

std::vector<ConversationLog> read_logs(std::istream& in)
{
    std::vector<ConversationLog> logs;
    std::map<std::string, std::size_t> by_id;
    auto log_for = [&](const std::string& id, const std::string& preset) -> ConversationLog& {
        auto [it, inserted] = by_id.emplace(id, logs.size());
        if (inserted) logs.push_back({id, preset, {}, std::nullopt});
        return logs[it->second];
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json j = json::parse(line);
            const int schema = j.at("schema").get<int>();
            if (schema != kLogSchemaVersion) {
                throw LogFormatError(line_no, "unsupported schema version " + std::to_string(schema));
            }
            const auto type = j.at("type").get<std::string>();
            if (type == "message") {
                auto record = message_from_json(j);
                log_for(record.session_id, record.preset).messages.push_back(std::move(record));
            } else if (type == "session") {
                auto summary = summary_from_json(j);
                log_for(summary.session_id, summary.preset).summary = std::move(summary);
            } else {
                throw LogFormatError(line_no, "unknown record type '" + type + "'");
            }
        } catch (const LogFormatError&) {
            throw;
        } catch (const std::exception& e) {
            throw LogFormatError(line_no, e.what());
        }
    }
    return logs;
}

std::vector<ConversationLog> read_log_path(const std::filesystem::path& path)
{
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
        for (const auto& entry : fs::recursive_directory_iterator(path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(path);
    }

    std::vector<ConversationLog> all;
    std::map<std::string, std::size_t> by_id;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot open " + file.string());
        for (auto& log : read_logs(in)) {
            auto [it, inserted] = by_id.emplace(log.session_id, all.size());
            if (inserted) {
                all.push_back(std::move(log));
                continue;
            }
            // A session spanning midnight lands in two day directories.
            auto& merged = all[it->second];
            for (auto& m : log.messages) merged.messages.push_back(std::move(m));
            if (log.summary) merged.summary = std::move(log.summary);
        }
    }
    return all;
}

} // namespace typebot
