#include "support/test_support.hpp"

#include "typebot/conversation_log.hpp"
#include "typebot/segmenter.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace typebot;

namespace {

ConversationLog five_messages()
{
    ConversationLog log{"s-1", "red", {}, std::nullopt};
    const char* texts[] = {"Hi there.", "Hello! How are you today?", "Good, thanks. And you?",
                           "I am well. The weather is lovely.", "Bye."};
    std::int64_t t = 1000;
    for (std::size_t i = 0; i < 5; ++i) {
        const auto sender = i % 2 == 0 ? Sender::User : Sender::Agent;
        log.messages.push_back(make_message("s-1", "red", i / 2, sender, texts[i], t, t + 500));
        t += 2000;
    }
    return log;
}

} // namespace

TEST_CASE("make_message counts match the segmenter")
{
    const auto m = make_message("s", "blue", 0, Sender::User, "Hi there.", 5, 5);
    CHECK(m.words == 2);
    CHECK(m.sentences == 1);
    const auto e = make_message("s", "blue", 0, Sender::User, "", 5, 3);
    CHECK(e.words == 0);
    CHECK(e.completed_at_ms == 5);
}

TEST_CASE("records round trip through JSON lines")
{
    auto log = five_messages();
    std::stringstream out;
    for (const auto& m : log.messages) out << to_json(m).dump() << "\n";
    const auto summary = summarize(log);
    out << to_json(summary).dump() << "\n";

    const auto back = read_logs(out);
    REQUIRE(back.size() == 1);
    CHECK(back[0].messages == log.messages);
    REQUIRE(back[0].summary);
    CHECK(*back[0].summary == summary);
    for (const auto& m : back[0].messages) {
        CHECK(m.words == word_count(m.text));
        CHECK(m.sentences == sentence_count(m.text));
    }
}

TEST_CASE("summary totals and duration")
{
    const auto s = summarize(five_messages());
    CHECK(s.messages == 5);
    CHECK(s.user_words == 2 + 4 + 1);
    CHECK(s.agent_words == 5 + 7);
    CHECK(s.user_sentences == 1 + 2 + 1);
    CHECK(s.agent_sentences == 2 + 2);
    // First user message at 1000, last agent message completed at 7000 + 500.
    CHECK(s.duration_seconds == doctest::Approx(6.5));
    CHECK(summarize(ConversationLog{}).duration_seconds == 0);
}

TEST_CASE("malformed log lines are reported by line")
{
    std::stringstream in;
    in << to_json(five_messages().messages[0]).dump() << "\n\n{\"schema\":1,\"type\":\"message\"}\n";
    try {
        read_logs(in);
        FAIL("expected LogFormatError");
    } catch (const LogFormatError& e) {
        CHECK(e.line() == 3);
    }
    std::stringstream future(R"({"schema":2,"type":"message"})");
    CHECK_THROWS_AS(read_logs(future), LogFormatError);
}

TEST_CASE("read_log_path merges day directories")
{
    testing::TempDir dir;
    const auto log = five_messages();
    std::filesystem::create_directories(dir.path() / "2026-01-01");
    std::filesystem::create_directories(dir.path() / "2026-01-02");
    {
        std::ofstream a(dir.path() / "2026-01-01" / "conversations.jsonl");
        for (std::size_t i = 0; i < 3; ++i) a << to_json(log.messages[i]).dump() << "\n";
        std::ofstream b(dir.path() / "2026-01-02" / "conversations.jsonl");
        for (std::size_t i = 3; i < 5; ++i) b << to_json(log.messages[i]).dump() << "\n";
    }
    const auto logs = read_log_path(dir.path());
    REQUIRE(logs.size() == 1);
    CHECK(logs[0].messages == log.messages);
}
