#include "support/test_support.hpp"

#include "typebot/agent_session.hpp"
#include "typebot/errors.hpp"
#include "typebot/prompt.hpp"
#include "typebot/trace_io.hpp"

#include <doctest.h>
#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

using namespace typebot;

namespace {

const char* kGoldenText =
    "Honestly, I think the weather has been lovely this week. We went for a long walk by the river, "
    "and the dogs were happy and calm.\n\nMaybe we could try the new cafe tomorrow?";

std::unique_ptr<ResponseBackend> scripted(std::vector<std::string> corpus)
{
    return std::make_unique<ScriptedBackend>(std::map<std::string, std::string>{}, std::move(corpus));
}

// OpenAI-style completions endpoint on a loopback port.
class StubCompletions {
public:
    explicit StubCompletions(int status = 200, int delay_ms = 0)
    {
        server_.Post("/v1/chat/completions", [this, status, delay_ms](const httplib::Request& req,
                                                                      httplib::Response& res) {
            if (delay_ms) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
            last_body = req.body;
            last_auth = req.get_header_value("Authorization");
            res.status = status;
            const auto body = nlohmann::json::parse(req.body);
            const std::string prompt = body["messages"][0]["content"];
            const nlohmann::json reply = {
                {"choices", {{{"message", {{"role", "assistant"}, {"content", "Reply to: " + prompt.substr(0, 5)}}}}}}};
            res.set_content(reply.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~StubCompletions()
    {
        server_.stop();
        thread_.join();
    }
    std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
    std::string last_body;
    std::string last_auth;

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

std::size_t count_kind(const EventTrace& t, EventKind kind)
{
    return static_cast<std::size_t>(
        std::count_if(t.events.begin(), t.events.end(), [kind](const KeystrokeEvent& e) { return e.kind == kind; }));
}

} // namespace

TEST_CASE("presets carry the study constants and invariants")
{
    const auto blue = preset_config(Preset::Blue);
    CHECK(blue.temporal.character_typing == Pace{15, 3});
    CHECK(blue.temporal.space_lag == Pace{20, 5});
    CHECK(blue.temporal.pause_rate == 0);
    CHECK_FALSE(blue.editing.any_editing());

    const auto green = preset_config(Preset::Green);
    CHECK(green.temporal.character_typing == Pace{80, 25});
    CHECK(green.temporal.space_lag == Pace{150, 50});
    CHECK(green.temporal.pause_rate == 0.15);
    CHECK(green.temporal.thinking_time == Pace{1.5, 0.5});
    CHECK_FALSE(green.editing.any_editing());

    const auto red = preset_config(Preset::Red);
    CHECK(red.temporal == green.temporal);
    CHECK(red.editing.word.modification == 0.08);
    CHECK(red.editing.word.deletion == 0.05);
    CHECK(red.editing.typo_rate == 0.03);

    for (auto p : {Preset::Blue, Preset::Green, Preset::Red}) {
        const auto c = preset_config(p);
        CHECK(satisfies_preset(c.temporal, c.editing, p));
        CHECK_NOTHROW(validate(c));
        CHECK(preset_from_string(to_string(p)) == p);
    }
    CHECK(preset_from_string("RED") == Preset::Red);
    CHECK_FALSE(preset_from_string("purple"));
}

TEST_CASE("agent config JSON overlays and relabelling")
{
    const auto red = agent_config_from_json(nlohmann::json::parse(R"({"preset":"red"})"));
    CHECK(red == preset_config(Preset::Red));

    const auto slower = agent_config_from_json(
        nlohmann::json::parse(R"({"preset":"green","temporal":{"characterTypingPace":{"mean":120}}})"));
    CHECK(slower.preset == Preset::Green);
    CHECK(slower.temporal.character_typing == Pace{120, 25});

    const auto edited = agent_config_from_json(
        nlohmann::json::parse(R"({"preset":"green","editing":{"character":{"typoRate":0.1}}})"));
    CHECK(edited.preset == Preset::Custom);

    CHECK(to_json(agent_config_from_json(nlohmann::json(to_json(red)))) == to_json(red));

    CHECK_THROWS_AS(agent_config_from_json(nlohmann::json::parse(R"({"preset":"red","mood":1})")), ValidationError);
    CHECK_THROWS_AS(agent_config_from_json(nlohmann::json::parse(
                        R"({"editing":{"word":{"deletionRate":0.6,"modificationRate":0.6}}})")),
                    ValidationError);
    CHECK_THROWS_AS(agent_config_from_json(nlohmann::json::parse(R"({"backend":{"kind":"remote"}})")),
                    ValidationError);
    CHECK_THROWS_AS(agent_config_from_json(nlohmann::json::parse(R"({"constraints":{"maxWords":0}})")),
                    ValidationError);
}

TEST_CASE("prompt template is byte exact")
{
    PromptConstraints c{2, 25, "English only"};
    CHECK(build_prompt("hi", c) ==
          "hi\n(Please provide a reply with no more than 2 sentences, and less than 25 words in total. "
          "Use English only please.)");
    CHECK(build_prompt("How are you?", {}) ==
          "How are you?\n(Please provide a reply with no more than 3 sentences, and less than 50 words in "
          "total. Use English only please.)");
    CHECK_THROWS_AS(build_prompt("", c), ValidationError);

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        PromptConstraints r{static_cast<int>(rng.between(1, 20)), static_cast<int>(rng.between(1, 500)),
                            i % 2 ? "English only" : "simple Spanish"};
        const auto msg = testing::random_text(rng, 30) + (i % 3 ? "" : "\nsecond line");
        if (msg.empty()) continue;
        const auto parsed = parse_prompt(build_prompt(msg, r));
        REQUIRE(parsed);
        CHECK(parsed->user_message == msg);
        CHECK(parsed->constraints == r);
    }
    CHECK_FALSE(parse_prompt("no constraint line"));
}

TEST_CASE("scripted and echo backends")
{
    ScriptedBackend b({{"hello", "Hi there."}}, {"one", "two"});
    CHECK(b.reply({"hello", "", 7}) == "Hi there.");
    CHECK(b.reply({"x", "", 0}) == "one");
    CHECK(b.reply({"x", "", 3}) == "two");
    CHECK(ScriptedBackend({}, {}).reply({"x", "", 0}).empty());
    CHECK(EchoBackend().reply({"same", "", 0}) == "same");
}

TEST_CASE("remote backend sends the prompt and reads the first choice")
{
    StubCompletions stub;
    ::setenv("TYPEBOT_TEST_KEY", "sekrit", 1);
    BackendBinding binding;
    binding.kind = BackendKind::Remote;
    binding.endpoint = stub.endpoint();
    binding.model = "test-model";
    binding.auth_env = "TYPEBOT_TEST_KEY";
    auto backend = make_backend(binding);
    const auto prompt = build_prompt("Hello", {});
    CHECK(backend->reply({"Hello", prompt, 0}) == "Reply to: Hello");
    const auto body = nlohmann::json::parse(stub.last_body);
    CHECK(body["model"] == "test-model");
    CHECK(body["messages"][0]["role"] == "user");
    CHECK(body["messages"][0]["content"] == prompt);
    CHECK(stub.last_auth == "Bearer sekrit");
}

TEST_CASE("remote backend failures raise BackendUnavailable")
{
    {
        StubCompletions failing(503);
        RemoteLlmBackend b(failing.endpoint(), "", "", 2000);
        CHECK_THROWS_AS(b.reply({"x", "x", 0}), BackendUnavailable);
    }
    {
        StubCompletions slow(200, 600);
        RemoteLlmBackend b(slow.endpoint(), "", "", 150);
        CHECK_THROWS_AS(b.reply({"x", "x", 0}), BackendUnavailable);
    }
    RemoteLlmBackend refused("http://127.0.0.1:1", "", "", 500);
    CHECK_THROWS_AS(refused.reply({"x", "x", 0}), BackendUnavailable);
}

TEST_CASE("sessions are deterministic per seed")
{
    auto run = [](std::uint64_t seed) {
        AgentSession s("s", preset_config(Preset::Red), seed, nullptr,
                       scripted({kGoldenText, "Sure, that sounds great to me."}));
        std::string out;
        for (int i = 0; i < 3; ++i) {
            const auto r = s.respond("hello " + std::to_string(i), i * 10000);
            out += trace_to_string(r.trace);
            while (s.take_event()) {
            }
            s.finish(i * 10000 + r.trace.duration_ms());
        }
        return out;
    };
    CHECK(run(11) == run(11));
    CHECK(run(11) != run(12));
}

TEST_CASE("each message uses the derived seed")
{
    const auto config = preset_config(Preset::Red);
    AgentSession s("s", config, 99, nullptr, scripted({kGoldenText}));
    const auto lex = Lexicon::bundled();
    for (std::size_t i = 0; i < 3; ++i) {
        const auto r = s.respond("q", 0);
        CHECK(r.index == i);
        CHECK(r.text == kGoldenText);
        const auto expected = make_trace(kGoldenText, config.temporal, config.editing, *lex, derive_seed(99, i));
        CHECK(r.trace.events == expected.events);
        CHECK(r.trace.seed == derive_seed(99, i));
        CHECK(apply_trace(r.trace.events) == kGoldenText);
        s.finish(r.trace.duration_ms());
    }
}

TEST_CASE("transcript records both sides with counts and status")
{
    AgentSession s("s-9", preset_config(Preset::Green), 3, nullptr, scripted({"Hi there. How are you?"}));
    const auto r = s.respond("Hello!", 1000);
    s.finish(1000 + r.trace.duration_ms());
    const auto r2 = s.respond("Tell me more.", 50000);
    for (int i = 0; i < 5; ++i) s.take_event();
    const auto cut = s.finish(50000 + 10, MessageStatus::Interrupted);
    CHECK(cut.status == MessageStatus::Interrupted);
    CHECK(cut.text == apply_trace({r2.trace.events.begin(), r2.trace.events.begin() + 5}));

    const auto log = s.transcript();
    REQUIRE(log.messages.size() == 4);
    CHECK(log.messages[0].sender == Sender::User);
    CHECK(log.messages[1].text == "Hi there. How are you?");
    CHECK(log.messages[1].words == 5);
    CHECK(log.messages[1].sentences == 2);
    CHECK(log.messages[1].sent_at_ms == 1000);
    CHECK(log.messages[1].completed_at_ms == 1000 + r.trace.duration_ms());
    REQUIRE(log.summary);
    CHECK(log.summary->messages == 4);
    CHECK(log.messages[3].preset == "green");

    CHECK(s.take_unpersisted().size() == 4);
    CHECK(s.take_unpersisted().empty());
}

TEST_CASE("backend failure logs an interrupted exchange")
{
    class Down : public ResponseBackend {
    public:
        std::string reply(const BackendRequest&) override { throw BackendUnavailable("down"); }
    };
    AgentSession s("s", preset_config(Preset::Blue), 1, nullptr, std::make_unique<Down>());
    CHECK_THROWS_AS(s.respond("hi", 10), BackendUnavailable);
    CHECK_FALSE(s.has_in_flight());
    const auto log = s.transcript();
    REQUIRE(log.messages.size() == 2);
    CHECK(log.messages[1].status == MessageStatus::Interrupted);
}

TEST_CASE("live parameter updates")
{
    AgentSession s("s", preset_config(Preset::Green), 8, nullptr, scripted({kGoldenText}));
    const auto r = s.respond("hi", 0);
    std::vector<KeystrokeEvent> shown;
    for (int i = 0; i < 20; ++i) shown.push_back(*s.take_event());

    SUBCASE("emitted events are never rewritten")
    {
        const auto before = *s.in_flight();
        const auto config = s.update_params(nlohmann::json::parse(R"({"characterTypingPace":{"mean":300,"std":0}})"));
        CHECK(config.temporal.character_typing == Pace{300, 0});
        CHECK(config.preset == Preset::Green);
        const auto after = *s.in_flight();
        REQUIRE(after.events.size() >= shown.size());
        for (std::size_t i = 0; i < shown.size(); ++i) CHECK(after.events[i] == shown[i]);
        CHECK(after.duration_ms() > before.duration_ms());
        CHECK(apply_trace(after.events) == kGoldenText);
        for (std::size_t i = shown.size(); i < after.events.size(); ++i) {
            CHECK(after.events[i].t_ms >= after.events[i - 1].t_ms);
            if (after.events[i].gap == GapKind::Char) CHECK(after.events[i].t_ms - after.events[i - 1].t_ms == 300);
        }
    }
    SUBCASE("an invalid patch changes nothing")
    {
        const auto before = s.in_flight();
        CHECK_THROWS_AS(s.update_params(nlohmann::json::parse(R"({"word":{"deletionRate":0.7,"insertionRate":0.7}})")),
                        ValidationError);
        CHECK_THROWS_AS(s.update_params(nlohmann::json::parse(R"({"pauseRate":2})")), ValidationError);
        CHECK_THROWS_AS(s.update_params(nlohmann::json::parse(R"({"volume":11})")), ValidationError);
        CHECK(s.config() == preset_config(Preset::Green));
        CHECK(s.in_flight()->events == before->events);
    }
    SUBCASE("an empty patch is the identity")
    {
        const auto before = s.in_flight();
        CHECK(s.update_params(nlohmann::json::object()) == preset_config(Preset::Green));
        CHECK(s.in_flight()->events == before->events);
    }
    SUBCASE("editing changes apply from the next message")
    {
        const auto before = s.in_flight();
        const auto config = s.update_params(nlohmann::json::parse(R"({"editing":{"character":{"typoRate":0.5}}})"));
        CHECK(config.preset == Preset::Custom);
        CHECK(s.in_flight()->events == before->events);
        s.finish(r.trace.duration_ms());
        const auto next = s.respond("again", 100000);
        CHECK(next.trace.stats.character.drawn[1] + next.trace.stats.character.drawn[2] +
                  next.trace.stats.character.drawn[0] >
              0);
    }
}

TEST_CASE("preset traces have the expected event kinds")
{
    const auto lex = Lexicon::bundled();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto blue = preset_config(Preset::Blue);
        const auto b = make_trace(kGoldenText, blue.temporal, blue.editing, *lex, seed);
        CHECK(count_kind(b, EventKind::Pause) == 0);
        CHECK(count_kind(b, EventKind::DeleteBackward) + count_kind(b, EventKind::MoveCursorTo) == 0);
    }
}

TEST_CASE("golden traces")
{
    const auto lex = Lexicon::bundled();
    const bool update = std::getenv("TYPEBOT_UPDATE_GOLDEN") != nullptr;
    for (auto p : {Preset::Blue, Preset::Green, Preset::Red}) {
        const std::string name = to_string(p);
        CAPTURE(name);
        const auto c = preset_config(p);
        const auto text = trace_to_string(make_trace(kGoldenText, c.temporal, c.editing, *lex, 2024));
        const auto path = std::filesystem::path(TYPEBOT_TEST_DATA) / "golden" / (name + ".jsonl");
        if (update) {
            std::ofstream(path, std::ios::binary) << text;
            continue;
        }
        std::ifstream in(path, std::ios::binary);
        REQUIRE_MESSAGE(in, "missing golden file; run with TYPEBOT_UPDATE_GOLDEN=1");
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == text);
        std::istringstream again(buf.str());
        const auto trace = read_trace(again);
        CHECK(apply_trace(trace.events) == kGoldenText);
    }
}
