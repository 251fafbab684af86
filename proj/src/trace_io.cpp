#include "typebot/trace_io.hpp"

#include "typebot/utf8.hpp"

#include <fstream>
#include <sstream>

namespace typebot {

namespace {

EventKind parse_kind(const std::string& name, long index)
{
    if (name == "type_char") return EventKind::TypeChar;
    if (name == "delete_backward") return EventKind::DeleteBackward;
    if (name == "move_cursor") return EventKind::MoveCursorTo;
    if (name == "pause") return EventKind::Pause;
    throw TraceFormatError(index, "unknown event kind '" + name + "'");
}

GapKind parse_gap(const std::string& name, long index)
{
    if (name == "char") return GapKind::Char;
    if (name == "word") return GapKind::Word;
    if (name == "delete") return GapKind::Delete;
    if (name == "cursor") return GapKind::Cursor;
    if (name == "think") return GapKind::Think;
    throw TraceFormatError(index, "unknown gap kind '" + name + "'");
}

nlohmann::ordered_json level_stats_to_json(const LevelStats& s)
{
    nlohmann::ordered_json drawn, applied;
    for (auto kind : {EditKind::Delete, EditKind::Insert, EditKind::Modify}) {
        drawn[to_string(kind)] = s.drawn[static_cast<std::size_t>(kind)];
        applied[to_string(kind)] = s.applied[static_cast<std::size_t>(kind)];
    }
    return {{"eligible", s.eligible}, {"drawn", drawn}, {"applied", applied}};
}

LevelStats level_stats_from_json(const nlohmann::json& j)
{
    LevelStats s;
    s.eligible = j.at("eligible").get<std::size_t>();
    for (auto kind : {EditKind::Delete, EditKind::Insert, EditKind::Modify}) {
        s.drawn[static_cast<std::size_t>(kind)] = j.at("drawn").at(to_string(kind)).get<std::size_t>();
        s.applied[static_cast<std::size_t>(kind)] = j.at("applied").at(to_string(kind)).get<std::size_t>();
    }
    return s;
}

} // namespace

nlohmann::ordered_json event_to_json(const KeystrokeEvent& e)
{
    nlohmann::ordered_json payload;
    switch (e.kind) {
    case EventKind::TypeChar: payload["char"] = utf8::encode(e.ch); break;
    case EventKind::DeleteBackward: break;
    case EventKind::MoveCursorTo: payload["offset"] = e.target; break;
    case EventKind::Pause: payload["duration"] = e.duration_ms; break;
    }
    payload["gap"] = to_string(e.gap);
    return {{"t", e.t_ms}, {"kind", to_string(e.kind)}, {"payload", payload}, {"caret", e.caret}};
}

KeystrokeEvent event_from_json(const nlohmann::json& record, long index)
{
    try {
        KeystrokeEvent e;
        e.t_ms = record.at("t").get<std::int64_t>();
        e.kind = parse_kind(record.at("kind").get<std::string>(), index);
        e.caret = record.at("caret").get<std::size_t>();
        const auto& payload = record.at("payload");
        e.gap = parse_gap(payload.at("gap").get<std::string>(), index);
        switch (e.kind) {
        case EventKind::TypeChar: {
            const auto ch = utf8::decode(payload.at("char").get<std::string>());
            if (ch.size() != 1) throw TraceFormatError(index, "type_char payload must hold one character");
            e.ch = ch.front();
            break;
        }
        case EventKind::DeleteBackward: break;
        case EventKind::MoveCursorTo: e.target = payload.at("offset").get<std::size_t>(); break;
        case EventKind::Pause: e.duration_ms = payload.at("duration").get<std::int64_t>(); break;
        }
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw TraceFormatError(index, ex.what());
    }
}

nlohmann::ordered_json plan_stats_to_json(const PlanStats& stats)
{
    return {{"sentence", level_stats_to_json(stats.sentence)},
            {"word", level_stats_to_json(stats.word)},
            {"character", level_stats_to_json(stats.character)}};
}

PlanStats plan_stats_from_json(const nlohmann::json& j)
{
    PlanStats s;
    s.sentence = level_stats_from_json(j.at("sentence"));
    s.word = level_stats_from_json(j.at("word"));
    s.character = level_stats_from_json(j.at("character"));
    return s;
}

void write_trace(std::ostream& out, const EventTrace& trace)
{
    nlohmann::ordered_json payload = {
        {"schema", kTraceSchemaVersion},
        {"seed", trace.seed},
        {"config", {{"temporal", to_json(trace.temporal)}, {"editing", to_json(trace.editing)}}},
        {"initialText", trace.initial_text},
        {"finalText", trace.final_text},
        {"stats", plan_stats_to_json(trace.stats)},
    };
    nlohmann::ordered_json header = {{"t", 0}, {"kind", "trace"}, {"payload", payload}, {"caret", 0}};
    out << header.dump() << '\n';
    for (const auto& e : trace.events) out << event_to_json(e).dump() << '\n';
}

std::string trace_to_string(const EventTrace& trace)
{
    std::ostringstream ss;
    write_trace(ss, trace);
    return ss.str();
}

EventTrace read_trace(std::istream& in)
{
    EventTrace trace;
    std::string line;
    bool have_header = false;
    long index = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw TraceFormatError(have_header ? index : -1, std::string("invalid JSON: ") + e.what());
        }
        if (!have_header) {
            try {
                if (record.at("kind") != "trace") throw TraceFormatError(-1, "first record must be the trace header");
                const auto& p = record.at("payload");
                if (p.at("schema").get<int>() != kTraceSchemaVersion) {
                    throw TraceFormatError(-1, "unsupported schema version");
                }
                trace.seed = p.at("seed").get<std::uint64_t>();
                trace.temporal = temporal_from_json(p.at("config").at("temporal"));
                trace.editing = editing_from_json(p.at("config").at("editing"));
                trace.initial_text = p.at("initialText").get<std::string>();
                trace.final_text = p.at("finalText").get<std::string>();
                trace.stats = plan_stats_from_json(p.at("stats"));
            } catch (const nlohmann::json::exception& e) {
                throw TraceFormatError(-1, e.what());
            } catch (const std::runtime_error& e) {
                if (dynamic_cast<const TraceFormatError*>(&e)) throw;
                throw TraceFormatError(-1, e.what());
            }
            have_header = true;
            continue;
        }
        trace.events.push_back(event_from_json(record, index));
        ++index;
    }
    if (!have_header) throw TraceFormatError(-1, "missing trace header");
    return trace;
}

EventTrace read_trace_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open trace file " + path.string());
    return read_trace(in);
}

} // namespace typebot
