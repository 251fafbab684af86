#include "typebot/gateway/protocol.hpp"

#include "typebot/trace_io.hpp"

namespace typebot::gateway {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename T>
T get(const json& j, const char* key)
{
    if (!j.contains(key)) throw ProtocolError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ProtocolError(std::string("field '") + key + "' has the wrong type");
    }
}

json parse_object(std::string_view line)
{
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ProtocolError(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ProtocolError("message must be a JSON object");
    return j;
}

} // namespace

ClientMessage parse_client_message(std::string_view line)
{
    const json j = parse_object(line);
    const auto type = get<std::string>(j, "type");
    if (type == "open_session") {
        OpenSession m;
        if (j.contains("preset")) m.preset = get<std::string>(j, "preset");
        if (j.contains("config")) {
            if (!j["config"].is_object()) throw ProtocolError("field 'config' must be an object");
            m.config = j["config"];
        }
        if (j.contains("seed")) m.seed = get<std::uint64_t>(j, "seed");
        return m;
    }
    if (type == "user_message") return UserMessage{get<std::string>(j, "text")};
    if (type == "update_params") {
        if (!j.contains("patch") || !j["patch"].is_object()) throw ProtocolError("field 'patch' must be an object");
        return UpdateParams{j["patch"]};
    }
    if (type == "set_visibility") return SetVisibility{get<bool>(j, "showTyping")};
    throw ProtocolError("unknown message type '" + type + "'");
}

ordered_json to_json(const ClientMessage& message)
{
    return std::visit(
        [](const auto& m) -> ordered_json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, OpenSession>) {
                ordered_json j = {{"type", "open_session"}};
                if (m.preset) j["preset"] = *m.preset;
                if (m.config) j["config"] = *m.config;
                if (m.seed) j["seed"] = *m.seed;
                return j;
            } else if constexpr (std::is_same_v<T, UserMessage>) {
                return {{"type", "user_message"}, {"text", m.text}};
            } else if constexpr (std::is_same_v<T, UpdateParams>) {
                return {{"type", "update_params"}, {"patch", m.patch}};
            } else {
                return {{"type", "set_visibility"}, {"showTyping", m.show_typing}};
            }
        },
        message);
}

ordered_json to_json(const ServerMessage& message)
{
    return std::visit(
        [](const auto& m) -> ordered_json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, WaitingRoom>) {
                return {{"type", "waiting_room"}, {"delayMs", m.delay_ms}};
            } else if constexpr (std::is_same_v<T, SessionReady>) {
                return {{"type", "session_ready"}, {"sessionId", m.session_id}};
            } else if constexpr (std::is_same_v<T, EventMessage>) {
                return {{"type", "event"}, {"messageId", m.message_id}, {"event", event_to_json(m.event)}};
            } else if constexpr (std::is_same_v<T, FinalText>) {
                return {{"type", "event"}, {"messageId", m.message_id}, {"event", {{"kind", "text"}, {"text", m.text}}}};
            } else if constexpr (std::is_same_v<T, TraceDone>) {
                return {{"type", "trace_done"}, {"messageId", m.message_id}};
            } else {
                return {{"type", "notice"}, {"kind", m.kind}, {"text", m.text}};
            }
        },
        message);
}

ServerMessage parse_server_message(std::string_view line)
{
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    const json j = parse_object(line);
    const auto type = get<std::string>(j, "type");
    if (type == "waiting_room") return WaitingRoom{get<std::int64_t>(j, "delayMs")};
    if (type == "session_ready") return SessionReady{get<std::string>(j, "sessionId")};
    if (type == "trace_done") return TraceDone{get<std::size_t>(j, "messageId")};
    if (type == "notice") return Notice{get<std::string>(j, "kind"), get<std::string>(j, "text")};
    if (type == "event") {
        const auto id = get<std::size_t>(j, "messageId");
        if (!j.contains("event") || !j["event"].is_object()) throw ProtocolError("field 'event' must be an object");
        const auto& e = j["event"];
        if (e.value("kind", "") == "text") return FinalText{id, get<std::string>(e, "text")};
        try {
            return EventMessage{id, event_from_json(e)};
        } catch (const std::exception& ex) {
            throw ProtocolError(std::string("bad event: ") + ex.what());
        }
    }
    throw ProtocolError("unknown message type '" + type + "'");
}

std::string frame(const ServerMessage& message)
{
    return to_json(message).dump() + "\n";
}

std::string frame(const ClientMessage& message)
{
    return to_json(message).dump() + "\n";
}

} // namespace typebot::gateway
