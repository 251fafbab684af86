#include "support/test_support.hpp"

#include "typebot/edit_planner.hpp"
#include "typebot/segmenter.hpp"
#include "typebot/trace_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace typebot;

namespace {

EventTrace sample_trace(std::uint64_t seed)
{
    Rng rng(seed);
    const auto text = testing::random_text(rng, 60);
    static const auto lex = Lexicon::bundled();
    const auto plan = plan_edits(segment(text), testing::random_editing(rng), *lex, seed);
    return schedule(plan, testing::random_temporal(rng), seed);
}

std::vector<std::string> lines_of(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string join(const std::vector<std::string>& lines)
{
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
}

} // namespace

TEST_CASE("trace files round trip")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto trace = sample_trace(seed);
        const auto text = trace_to_string(trace);
        std::istringstream in(text);
        const auto back = read_trace(in);
        CHECK(back.events == trace.events);
        CHECK(back.seed == trace.seed);
        CHECK(back.temporal == trace.temporal);
        CHECK(back.editing == trace.editing);
        CHECK(back.initial_text == trace.initial_text);
        CHECK(back.final_text == trace.final_text);
        CHECK(trace_to_string(back) == text);
        CHECK(lines_of(text).size() == trace.events.size() + 1);
    }
}

TEST_CASE("trace records use the documented shape")
{
    EventTrace t;
    t.final_text = t.initial_text = "a";
    t.events.push_back({12, EventKind::TypeChar, U'a', 0, 0, 1, GapKind::Word});
    t.events.push_back({40, EventKind::Pause, 0, 0, 28, 1, GapKind::Think});
    const auto lines = lines_of(trace_to_string(t));
    REQUIRE(lines.size() == 3);
    const auto header = nlohmann::json::parse(lines[0]);
    CHECK(header["kind"] == "trace");
    CHECK(header["payload"]["schema"] == kTraceSchemaVersion);
    CHECK(lines[1] == R"({"t":12,"kind":"type_char","payload":{"char":"a","gap":"word"},"caret":1})");
    CHECK(lines[2] == R"({"t":40,"kind":"pause","payload":{"duration":28,"gap":"think"},"caret":1})");
}

TEST_CASE("malformed trace files report the event index")
{
    const auto good = lines_of(trace_to_string(sample_trace(3)));
    REQUIRE(good.size() > 4);

    auto broken = good;
    broken[3] = "{not json";
    std::istringstream in1(join(broken));
    try {
        read_trace(in1);
        FAIL("expected TraceFormatError");
    } catch (const TraceFormatError& e) {
        CHECK(e.event_index() == 2);
    }

    auto unknown = good;
    unknown[2] = R"({"t":1,"kind":"teleport","payload":{},"caret":0})";
    std::istringstream in2(join(unknown));
    CHECK_THROWS_AS(read_trace(in2), TraceFormatError);

    std::vector<std::string> headless(good.begin() + 1, good.end());
    std::istringstream in3(join(headless));
    try {
        read_trace(in3);
        FAIL("expected TraceFormatError");
    } catch (const TraceFormatError& e) {
        CHECK(e.event_index() == -1);
    }

    auto future = good;
    auto header = nlohmann::json::parse(future[0]);
    header["payload"]["schema"] = 99;
    future[0] = header.dump();
    std::istringstream in4(join(future));
    CHECK_THROWS_AS(read_trace(in4), TraceFormatError);
}
