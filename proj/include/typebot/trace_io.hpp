#pragma once

#include "typebot/typing_scheduler.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace typebot {

inline constexpr int kTraceSchemaVersion = 1;

// Malformed trace file; `event_index` is -1 for the header line.
class TraceFormatError : public std::runtime_error {
public:
    TraceFormatError(long event_index, const std::string& what)
        : std::runtime_error(event_index < 0 ? "header: " + what
                                             : "event " + std::to_string(event_index) + ": " + what),
          event_index_(event_index)
    {
    }
    long event_index() const { return event_index_; }

private:
    long event_index_;
};

// {"t": ms, "kind": ..., "payload": {...}, "caret": n}
nlohmann::ordered_json event_to_json(const KeystrokeEvent& event);
KeystrokeEvent event_from_json(const nlohmann::json& record, long event_index = 0);

nlohmann::ordered_json plan_stats_to_json(const PlanStats& stats);
PlanStats plan_stats_from_json(const nlohmann::json& j);

// Newline-delimited JSON: a header record of kind "trace" carrying seed,
// configuration snapshot, texts and plan statistics, then one record per event.
void write_trace(std::ostream& out, const EventTrace& trace);
std::string trace_to_string(const EventTrace& trace);
EventTrace read_trace(std::istream& in);
EventTrace read_trace_file(const std::filesystem::path& path);

} // namespace typebot
