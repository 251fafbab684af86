#pragma once

#include "typebot/agent_config.hpp"
#include "typebot/lexicon.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>

namespace typebot::gateway {

// The shared configuration file:
//   {"agent": AgentConfig, "lexicon": {...}, "gateway": {...}}
// Every section is optional.
struct AppConfig {
    AgentConfig agent = preset_config(Preset::Blue);
    LexiconOptions lexicon;

    std::string listen_address = "127.0.0.1";
    unsigned short port = 8080;
    std::int64_t waiting_min_ms = 5000;
    std::int64_t waiting_max_ms = 15000;
    std::string log_dir = "logs";
    std::optional<std::uint64_t> seed;
    int threads = 4;
};

// Throws ValidationError on unknown keys, wrong types or invalid values.
AppConfig app_config_from_json(const nlohmann::json& j);
AppConfig load_app_config(const std::string& path);

// TYPEBOT_LISTEN (host:port), TYPEBOT_WAITING_ROOM_MS (min,max),
// TYPEBOT_LOG_DIR, TYPEBOT_DEFAULT_PRESET, TYPEBOT_SEED, TYPEBOT_THREADS,
// TYPEBOT_BACKEND_ENDPOINT, TYPEBOT_BACKEND_MODEL. `getenv` is injectable for tests.
void apply_env_overrides(AppConfig& config,
                         const std::function<const char*(const char*)>& getenv = [](const char* k) {
                             return std::getenv(k);
                         });

// Parses "host:port"; throws ValidationError.
std::pair<std::string, unsigned short> parse_listen(const std::string& text);

} // namespace typebot::gateway
