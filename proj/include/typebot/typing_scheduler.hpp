#pragma once

#include "typebot/edit_planner.hpp"
#include "typebot/params.hpp"
#include "typebot/random.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace typebot {

enum class EventKind { TypeChar, DeleteBackward, MoveCursorTo, Pause };

// Which delay produced the gap before an event. Word = space lag plus
// character pace on the first character of a word.
enum class GapKind { Char, Word, Delete, Cursor, Think };

const char* to_string(EventKind kind);
const char* to_string(GapKind kind);

struct KeystrokeEvent {
    std::int64_t t_ms = 0;        // completion time from trace start
    EventKind kind = EventKind::TypeChar;
    char32_t ch = 0;              // TypeChar
    std::size_t target = 0;       // MoveCursorTo, in scalar values
    std::int64_t duration_ms = 0; // Pause
    std::size_t caret = 0;        // caret after the event is applied
    GapKind gap = GapKind::Char;

    friend bool operator==(const KeystrokeEvent&, const KeystrokeEvent&) = default;
};

struct EventTrace {
    std::vector<KeystrokeEvent> events;
    std::uint64_t seed = 0;
    TemporalParameters temporal;
    EditingParameters editing;
    std::string initial_text;
    std::string final_text;
    PlanStats stats;

    std::int64_t duration_ms() const { return events.empty() ? 0 : events.back().t_ms; }
};

// Normal(mean, std) truncated at zero by resampling; after 64 negative
// draws the result is clamped to 0.
double sample_delay(const Pace& pace, Rng& rng);

// Timed keystrokes for typing `plan.initial_text` and resolving each action
// when its anchor is reached. Throws PlanIntegrityError for anchors outside
// the typing order.
EventTrace schedule(const EditPlan& plan, const TemporalParameters& temporal, std::uint64_t seed);

// Re-times events from `from` onward under `temporal`, keeping the first
// `from` events untouched. Pauses in the tail are re-drawn at word starts.
EventTrace retime(const EventTrace& trace, std::size_t from, const TemporalParameters& temporal);

// Replays events on an empty buffer. Throws ReplayError naming the first bad event.
std::string apply_trace(const std::vector<KeystrokeEvent>& events);

} // namespace typebot
