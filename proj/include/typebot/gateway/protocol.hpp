#pragma once

#include "typebot/typing_scheduler.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace typebot::gateway {

class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Client to server.
struct OpenSession {
    std::optional<std::string> preset;
    std::optional<nlohmann::json> config; // AgentConfig object, overrides preset
    std::optional<std::uint64_t> seed;
};
struct UserMessage {
    std::string text;
};
struct UpdateParams {
    nlohmann::json patch;
};
struct SetVisibility {
    bool show_typing = true;
};
using ClientMessage = std::variant<OpenSession, UserMessage, UpdateParams, SetVisibility>;

// Server to client.
struct WaitingRoom {
    std::int64_t delay_ms = 0;
};
struct SessionReady {
    std::string session_id;
};
struct EventMessage {
    std::size_t message_id = 0;
    KeystrokeEvent event;
};
// The Event sent when typing is hidden: the whole reply at once.
struct FinalText {
    std::size_t message_id = 0;
    std::string text;
};
struct TraceDone {
    std::size_t message_id = 0;
};
struct Notice {
    std::string kind;
    std::string text;
};
using ServerMessage = std::variant<WaitingRoom, SessionReady, EventMessage, FinalText, TraceDone, Notice>;

// Single-line JSON; throws ProtocolError on anything malformed.
ClientMessage parse_client_message(std::string_view line);
nlohmann::ordered_json to_json(const ClientMessage& message);

nlohmann::ordered_json to_json(const ServerMessage& message);
ServerMessage parse_server_message(std::string_view line);

// JSON text plus the terminating newline.
std::string frame(const ServerMessage& message);
std::string frame(const ClientMessage& message);

} // namespace typebot::gateway
