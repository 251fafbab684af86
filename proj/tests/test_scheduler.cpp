#include "support/test_support.hpp"

#include "typebot/edit_planner.hpp"
#include "typebot/errors.hpp"
#include "typebot/segmenter.hpp"
#include "typebot/typing_scheduler.hpp"
#include "typebot/utf8.hpp"

#include <doctest.h>

using namespace typebot;

namespace {

const Lexicon& lex()
{
    static const auto l = Lexicon::bundled();
    return *l;
}

TemporalParameters fixed(double ch, double space, double del, double cursor)
{
    TemporalParameters t;
    t.character_typing = {ch, 0};
    t.space_lag = {space, 0};
    t.character_deletion = {del, 0};
    t.cursor_move = {cursor, 0};
    t.pause_rate = 0;
    return t;
}

// Word starts as defined for the space lag: a non-space after a space or at the start.
std::size_t word_starts(const std::u32string& s)
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!utf8::is_space(s[i]) && (i == 0 || utf8::is_space(s[i - 1]))) ++n;
    }
    return n;
}

} // namespace

TEST_CASE("sample_delay: zero variance and truncation")
{
    Rng rng(1);
    CHECK(sample_delay({42, 0}, rng) == 42);
    CHECK(sample_delay({-5, 0}, rng) == 0);
    for (int i = 0; i < 10000; ++i) CHECK(sample_delay({5, 50}, rng) >= 0);
}

TEST_CASE("sample_delay: (100, 20) moments")
{
    Rng rng(7);
    const int n = 10000;
    std::vector<double> v(n);
    for (auto& x : v) x = sample_delay({100, 20}, rng);
    double mean = 0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1));
    CHECK(std::abs(mean - 100) / 100 < 0.02);
    CHECK(std::abs(sd - 20) / 20 < 0.05);
}

TEST_CASE("zero-variance schedule has the closed-form duration")
{
    const std::string text = "hello world, how are you";
    const auto plan = plan_edits(segment(text), EditingParameters{}, lex(), 0);
    const auto trace = schedule(plan, fixed(10, 5, 30, 4), 0);
    const auto scalars = utf8::decode(text);
    REQUIRE(trace.events.size() == scalars.size());
    const auto starts = word_starts(scalars);
    CHECK(trace.duration_ms() == static_cast<std::int64_t>(10 * scalars.size() + 5 * starts));
    CHECK(apply_trace(trace.events) == text);
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        CHECK(trace.events[i].kind == EventKind::TypeChar);
        CHECK(trace.events[i].caret == i + 1);
    }
}

TEST_CASE("a synonym detour resolves with move, backspaces, retype, move back")
{
    EditingParameters p;
    p.word.modification = 1.0;
    const std::string text = "Really happy.";
    const auto plan = plan_edits(segment(text), p, lex(), 2);
    REQUIRE(plan.actions.size() == 1);
    const auto& a = plan.actions[0];
    const auto trace = schedule(plan, fixed(10, 0, 20, 3), 0);
    CHECK(apply_trace(trace.events) == text);

    std::size_t deletes = 0, moves = 0;
    for (const auto& e : trace.events) {
        if (e.kind == EventKind::DeleteBackward) {
            ++deletes;
            CHECK(e.t_ms > 0);
        }
        if (e.kind == EventKind::MoveCursorTo) ++moves;
    }
    // Common prefix of detour and word is kept.
    const auto detour = utf8::decode(a.detour);
    const auto word = utf8::decode(std::string(a.region.view(text)));
    std::size_t keep = 0;
    while (keep < detour.size() && keep < word.size() && detour[keep] == word[keep]) ++keep;
    CHECK(deletes == detour.size() - keep);
    CHECK(moves <= 2);
    const auto typed = utf8::length(plan.initial_text) + (word.size() - keep);
    std::size_t type_events = 0;
    for (const auto& e : trace.events) type_events += e.kind == EventKind::TypeChar;
    CHECK(type_events == typed);
}

TEST_CASE("random pipelines replay to the final text")
{
    Rng rng(99);
    for (int i = 0; i < 400; ++i) {
        const auto text = testing::random_text(rng, 150);
        const auto plan = plan_edits(segment(text), testing::random_editing(rng), lex(), rng.next_u64());
        const auto trace = schedule(plan, testing::random_temporal(rng), rng.next_u64());
        CHECK(apply_trace(trace.events) == text);
        CHECK(testing::naive_replay(trace.events) == text);
        for (std::size_t k = 1; k < trace.events.size(); ++k) {
            CHECK(trace.events[k].t_ms >= trace.events[k - 1].t_ms);
        }
    }
}

TEST_CASE("pauses precede word starts at the configured rate")
{
    const std::string text = "one two three four five six seven eight nine ten";
    auto t = fixed(10, 0, 10, 1);
    t.pause_rate = 1.0;
    t.thinking_time = {2.0, 0.0};
    const auto trace = schedule(plan_edits(segment(text), {}, lex(), 0), t, 0);
    std::size_t pauses = 0;
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        if (trace.events[i].kind != EventKind::Pause) continue;
        ++pauses;
        CHECK(trace.events[i].duration_ms == 2000);
        REQUIRE(i + 1 < trace.events.size());
        CHECK(trace.events[i + 1].gap == GapKind::Word);
    }
    CHECK(pauses == 10);
    CHECK(trace.duration_ms() == 10 * 2000 + 10 * static_cast<std::int64_t>(text.size()));
}

TEST_CASE("retime keeps the emitted prefix and re-paces the tail")
{
    EditingParameters p;
    p.typo_rate = 0.3;
    const std::string text = "Some words to type while the pace changes midway through the message.";
    const auto plan = plan_edits(segment(text), p, lex(), 4);
    const auto trace = schedule(plan, fixed(100, 0, 50, 5), 4);
    const std::size_t split = trace.events.size() / 2;
    const auto retimed = retime(trace, split, fixed(300, 0, 50, 5));

    for (std::size_t i = 0; i < split; ++i) CHECK(retimed.events[i] == trace.events[i]);
    CHECK(apply_trace(retimed.events) == text);
    REQUIRE(retimed.events.size() == trace.events.size());
    for (std::size_t i = split; i < retimed.events.size(); ++i) {
        CHECK(retimed.events[i].kind == trace.events[i].kind);
        if (retimed.events[i].gap == GapKind::Char) {
            CHECK(retimed.events[i].t_ms - retimed.events[i - 1].t_ms == 300);
        }
    }
    CHECK(retimed.duration_ms() > trace.duration_ms());
}

TEST_CASE("apply_trace names the bad event")
{
    std::vector<KeystrokeEvent> events(2);
    events[0] = {10, EventKind::TypeChar, U'a', 0, 0, 1, GapKind::Char};
    events[1] = {20, EventKind::DeleteBackward, 0, 0, 0, 0, GapKind::Delete};
    CHECK(apply_trace(events).empty());

    auto bad = events;
    bad.insert(bad.begin(), KeystrokeEvent{0, EventKind::DeleteBackward, 0, 0, 0, 0, GapKind::Delete});
    try {
        apply_trace(bad);
        FAIL("expected ReplayError");
    } catch (const ReplayError& e) {
        CHECK(e.event_index() == 0);
    }

    auto backwards = events;
    backwards[1].t_ms = 5;
    CHECK_THROWS_AS(apply_trace(backwards), ReplayError);

    auto far = events;
    far[1] = {20, EventKind::MoveCursorTo, 0, 9, 0, 9, GapKind::Cursor};
    CHECK_THROWS_AS(apply_trace(far), ReplayError);
}
