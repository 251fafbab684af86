#include "typebot/agent_config.hpp"

#include "typebot/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace typebot {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const char* const kTemporalKeys[] = {"characterTypingPace", "spaceLagPace", "characterDeletionPace",
                                     "cursorMoveSpeed",     "pauseRate",    "thinkingTime"};
const char* const kEditingKeys[] = {"paragraph", "sentence", "word", "character"};

bool is_one_of(const std::string& key, const auto& list)
{
    return std::any_of(std::begin(list), std::end(list), [&](const char* k) { return key == k; });
}

template <typename T>
T field(const json& j, const char* key, const std::string& where)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(where + "." + key + " has the wrong type");
    }
}

PromptConstraints constraints_from_json(const json& j, PromptConstraints base)
{
    if (!j.is_object()) throw ValidationError("constraints must be an object");
    for (const auto& item : j.items()) {
        const auto& k = item.key();
        if (k == "maxSentences") {
            base.max_sentences = field<int>(j, "maxSentences", "constraints");
        } else if (k == "maxWords") {
            base.max_words = field<int>(j, "maxWords", "constraints");
        } else if (k == "languageRestriction") {
            base.language_restriction = field<std::string>(j, "languageRestriction", "constraints");
        } else {
            throw ValidationError("unknown field '" + k + "' in constraints");
        }
    }
    return base;
}

BackendBinding backend_from_json(const json& j, BackendBinding base)
{
    if (!j.is_object()) throw ValidationError("backend must be an object");
    for (const auto& item : j.items()) {
        const auto& k = item.key();
        if (k == "kind") {
            const auto kind = field<std::string>(j, "kind", "backend");
            if (kind == "scripted") {
                base.kind = BackendKind::Scripted;
            } else if (kind == "echo") {
                base.kind = BackendKind::Echo;
            } else if (kind == "remote") {
                base.kind = BackendKind::Remote;
            } else {
                throw ValidationError("unknown backend kind '" + kind + "'");
            }
        } else if (k == "responses") {
            base.responses = field<std::map<std::string, std::string>>(j, "responses", "backend");
        } else if (k == "corpus") {
            base.corpus = field<std::vector<std::string>>(j, "corpus", "backend");
        } else if (k == "corpusFile") {
            const auto path = field<std::string>(j, "corpusFile", "backend");
            std::ifstream in(path);
            if (!in) throw ValidationError("cannot read backend corpus file " + path);
            base.corpus.clear();
            for (std::string line; std::getline(in, line);) {
                if (!line.empty()) base.corpus.push_back(line);
            }
        } else if (k == "endpoint") {
            base.endpoint = field<std::string>(j, "endpoint", "backend");
        } else if (k == "model") {
            base.model = field<std::string>(j, "model", "backend");
        } else if (k == "authEnv") {
            base.auth_env = field<std::string>(j, "authEnv", "backend");
        } else if (k == "timeoutMs") {
            base.timeout_ms = field<int>(j, "timeoutMs", "backend");
        } else {
            throw ValidationError("unknown field '" + k + "' in backend");
        }
    }
    return base;
}

Preset relabel(Preset preset, const TemporalParameters& t, const EditingParameters& e)
{
    return satisfies_preset(t, e, preset) ? preset : Preset::Custom;
}

} // namespace

const char* to_string(Preset preset)
{
    switch (preset) {
    case Preset::Blue: return "blue";
    case Preset::Green: return "green";
    case Preset::Red: return "red";
    case Preset::Custom: return "custom";
    }
    return "custom";
}

std::optional<Preset> preset_from_string(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (auto p : {Preset::Blue, Preset::Green, Preset::Red, Preset::Custom}) {
        if (lower == to_string(p)) return p;
    }
    return std::nullopt;
}

const char* to_string(BackendKind kind)
{
    switch (kind) {
    case BackendKind::Scripted: return "scripted";
    case BackendKind::Echo: return "echo";
    case BackendKind::Remote: return "remote";
    }
    return "echo";
}

AgentConfig preset_config(Preset preset)
{
    AgentConfig c;
    c.preset = preset;
    if (preset == Preset::Blue || preset == Preset::Custom) {
        c.temporal.character_typing = {15.0, 3.0};
        c.temporal.space_lag = {20.0, 5.0};
        c.temporal.character_deletion = {40.0, 10.0};
        c.temporal.cursor_move = {10.0, 3.0};
        c.temporal.pause_rate = 0.0;
        c.temporal.thinking_time = {1.5, 0.5};
        return c;
    }
    c.temporal.character_typing = {80.0, 25.0};
    c.temporal.space_lag = {150.0, 50.0};
    c.temporal.character_deletion = {100.0, 30.0};
    c.temporal.cursor_move = {30.0, 10.0};
    c.temporal.pause_rate = 0.15;
    c.temporal.thinking_time = {1.5, 0.5};
    if (preset == Preset::Red) {
        c.editing.word.modification = 0.08;
        c.editing.word.deletion = 0.05;
        c.editing.typo_rate = 0.03;
    }
    return c;
}

bool satisfies_preset(const TemporalParameters& temporal, const EditingParameters& editing, Preset preset)
{
    switch (preset) {
    case Preset::Blue: return temporal.pause_rate == 0.0 && !editing.any_editing();
    case Preset::Green: return temporal.pause_rate > 0.0 && !editing.any_editing();
    case Preset::Red: return temporal.pause_rate > 0.0 && editing.any_editing();
    case Preset::Custom: return true;
    }
    return false;
}

void validate(const AgentConfig& config)
{
    ensure_valid(config.temporal);
    ensure_valid(config.editing);
    const auto& c = config.constraints;
    if (c.max_sentences < 1) throw ValidationError("constraints.maxSentences must be at least 1");
    if (c.max_words < c.max_sentences) throw ValidationError("constraints.maxWords must be at least maxSentences");
    if (c.language_restriction.empty()) throw ValidationError("constraints.languageRestriction must not be empty");
    const auto& b = config.backend;
    if (b.kind == BackendKind::Scripted && b.responses.empty() && b.corpus.empty()) {
        throw ValidationError("scripted backend needs responses or a corpus");
    }
    if (b.kind == BackendKind::Remote && b.endpoint.empty()) {
        throw ValidationError("remote backend needs an endpoint");
    }
    if (b.timeout_ms <= 0) throw ValidationError("backend.timeoutMs must be positive");
    if (!satisfies_preset(config.temporal, config.editing, config.preset)) {
        throw ValidationError(std::string("parameters do not match preset ") + to_string(config.preset));
    }
}

ordered_json to_json(const PromptConstraints& c)
{
    return {{"maxSentences", c.max_sentences},
            {"maxWords", c.max_words},
            {"languageRestriction", c.language_restriction}};
}

ordered_json to_json(const BackendBinding& b)
{
    ordered_json j = {{"kind", to_string(b.kind)}};
    if (!b.responses.empty()) j["responses"] = b.responses;
    if (!b.corpus.empty()) j["corpus"] = b.corpus;
    if (!b.endpoint.empty()) j["endpoint"] = b.endpoint;
    if (!b.model.empty()) j["model"] = b.model;
    if (!b.auth_env.empty()) j["authEnv"] = b.auth_env;
    j["timeoutMs"] = b.timeout_ms;
    return j;
}

ordered_json to_json(const AgentConfig& config)
{
    return {{"preset", to_string(config.preset)},
            {"temporal", to_json(config.temporal)},
            {"editing", to_json(config.editing)},
            {"constraints", to_json(config.constraints)},
            {"backend", to_json(config.backend)}};
}

AgentConfig agent_config_from_json(const json& j, Preset fallback)
{
    if (!j.is_object()) throw ValidationError("agent config must be an object");
    Preset named = fallback;
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) throw ValidationError("preset must be a string");
        auto p = preset_from_string(j["preset"].get<std::string>());
        if (!p) throw ValidationError("unknown preset '" + j["preset"].get<std::string>() + "'");
        named = *p;
    }
    AgentConfig c = preset_config(named);
    for (const auto& item : j.items()) {
        const auto& k = item.key();
        if (k == "preset") continue;
        if (k == "temporal") {
            c.temporal = temporal_from_json(item.value(), c.temporal);
        } else if (k == "editing") {
            c.editing = editing_from_json(item.value(), c.editing);
        } else if (k == "constraints") {
            c.constraints = constraints_from_json(item.value(), c.constraints);
        } else if (k == "backend") {
            c.backend = backend_from_json(item.value(), c.backend);
        } else {
            throw ValidationError("unknown field '" + k + "' in agent config");
        }
    }
    c.preset = relabel(named, c.temporal, c.editing);
    validate(c);
    return c;
}

AgentConfig load_agent_config(const std::string& path, Preset fallback)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config " + path + " is not valid JSON: " + e.what());
    }
    return agent_config_from_json(j, fallback);
}

AgentConfig apply_param_patch(const AgentConfig& config, const json& patch)
{
    if (patch.is_null()) return config;
    if (!patch.is_object()) throw ValidationError("parameter patch must be an object");
    json temporal = json::object();
    json editing = json::object();
    for (const auto& item : patch.items()) {
        const auto& k = item.key();
        if (k == "temporal" || k == "editing") {
            if (!item.value().is_object()) throw ValidationError(k + " patch must be an object");
            auto& dst = k == "temporal" ? temporal : editing;
            for (const auto& inner : item.value().items()) dst[inner.key()] = inner.value();
        } else if (is_one_of(k, kTemporalKeys)) {
            temporal[k] = item.value();
        } else if (is_one_of(k, kEditingKeys)) {
            editing[k] = item.value();
        } else {
            throw ValidationError("unknown field '" + k + "' in parameter patch");
        }
    }
    AgentConfig next = config;
    next.temporal = temporal_from_json(temporal, config.temporal);
    next.editing = editing_from_json(editing, config.editing);
    ensure_valid(next.temporal);
    ensure_valid(next.editing);
    next.preset = relabel(config.preset, next.temporal, next.editing);
    return next;
}

} // namespace typebot
