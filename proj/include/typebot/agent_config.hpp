#pragma once

#include "typebot/params.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace typebot {

enum class Preset { Blue, Green, Red, Custom };

const char* to_string(Preset preset);
// Case-insensitive; nullopt for anything but blue, green, red, custom.
std::optional<Preset> preset_from_string(std::string_view name);

struct PromptConstraints {
    int max_sentences = 3;
    int max_words = 50;
    std::string language_restriction = "English only";

    friend bool operator==(const PromptConstraints&, const PromptConstraints&) = default;
};

enum class BackendKind { Scripted, Echo, Remote };

const char* to_string(BackendKind kind);

struct BackendBinding {
    BackendKind kind = BackendKind::Echo;
    // Scripted: exact user-message matches first, then the corpus in turn.
    std::map<std::string, std::string> responses;
    std::vector<std::string> corpus;
    // Remote: OpenAI-compatible chat completions endpoint.
    std::string endpoint;
    std::string model;
    std::string auth_env; // name of the environment variable holding the API key
    int timeout_ms = 20000;

    friend bool operator==(const BackendBinding&, const BackendBinding&) = default;
};

struct AgentConfig {
    Preset preset = Preset::Blue;
    TemporalParameters temporal;
    EditingParameters editing;
    PromptConstraints constraints;
    BackendBinding backend;

    friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

// The study presets with the default constants from the configuration reference.
AgentConfig preset_config(Preset preset);

// Blue: no pauses, no editing. Green: pauses, no editing. Red: pauses and
// some editing. Custom accepts anything.
bool satisfies_preset(const TemporalParameters& temporal, const EditingParameters& editing, Preset preset);

// Throws ValidationError on out-of-range parameters, bad constraints, an empty
// scripted backend or a remote backend without an endpoint.
void validate(const AgentConfig& config);

nlohmann::ordered_json to_json(const PromptConstraints& constraints);
nlohmann::ordered_json to_json(const BackendBinding& backend);
nlohmann::ordered_json to_json(const AgentConfig& config);

// "preset" picks the base (default `fallback`), the remaining keys overlay it.
// A named preset whose invariants no longer hold after the overlay is
// relabelled Custom. The result is validated.
AgentConfig agent_config_from_json(const nlohmann::json& j, Preset fallback = Preset::Blue);
AgentConfig load_agent_config(const std::string& path, Preset fallback = Preset::Blue);

// Applies a live parameter patch. Accepts {"temporal": {...}, "editing": {...}}
// or the same fields flattened at top level (characterTypingPace, word, ...).
// Returns the patched config without touching `config`; throws ValidationError.
AgentConfig apply_param_patch(const AgentConfig& config, const nlohmann::json& patch);

} // namespace typebot
