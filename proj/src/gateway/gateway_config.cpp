#include "typebot/gateway/gateway_config.hpp"

#include "typebot/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

namespace typebot::gateway {

using nlohmann::json;

namespace {

template <typename T>
T get(const json& j, const char* key, const char* where)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string(where) + "." + key + " has the wrong type");
    }
}

std::uint64_t parse_u64(const std::string& text, const char* what)
{
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValidationError(std::string(what) + " is not a non-negative integer: " + text);
    }
    return v;
}

void check_waiting(const AppConfig& c)
{
    if (c.waiting_min_ms < 0 || c.waiting_max_ms < c.waiting_min_ms) {
        throw ValidationError("waiting room range must satisfy 0 <= min <= max");
    }
    if (c.threads < 1) throw ValidationError("gateway.threads must be at least 1");
}

LexiconOptions lexicon_from_json(const json& j)
{
    if (!j.is_object()) throw ValidationError("lexicon must be an object");
    LexiconOptions o;
    for (const auto& item : j.items()) {
        const auto& k = item.key();
        if (k == "fillersFile") {
            o.fillers_file = get<std::string>(j, "fillersFile", "lexicon");
        } else if (k == "synonymsFile") {
            o.synonyms_file = get<std::string>(j, "synonymsFile", "lexicon");
        } else if (k == "remote") {
            const auto& r = item.value();
            if (!r.is_object()) throw ValidationError("lexicon.remote must be an object");
            RemoteSynonymService s;
            for (const auto& ri : r.items()) {
                if (ri.key() == "endpoint") {
                    s.endpoint = get<std::string>(r, "endpoint", "lexicon.remote");
                } else if (ri.key() == "timeoutMs") {
                    s.timeout_ms = get<int>(r, "timeoutMs", "lexicon.remote");
                } else {
                    throw ValidationError("unknown field '" + ri.key() + "' in lexicon.remote");
                }
            }
            if (s.endpoint.empty()) throw ValidationError("lexicon.remote.endpoint must not be empty");
            o.remote = s;
        } else {
            throw ValidationError("unknown field '" + k + "' in lexicon");
        }
    }
    return o;
}

} // namespace

std::pair<std::string, unsigned short> parse_listen(const std::string& text)
{
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0) throw ValidationError("listen address must be host:port: " + text);
    const auto port = parse_u64(text.substr(colon + 1), "listen port");
    if (port > 65535) throw ValidationError("listen port out of range: " + text);
    return {text.substr(0, colon), static_cast<unsigned short>(port)};
}

AppConfig app_config_from_json(const json& j)
{
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    AppConfig c;
    for (const auto& item : j.items()) {
        const auto& k = item.key();
        if (k == "agent") {
            c.agent = agent_config_from_json(item.value());
        } else if (k == "lexicon") {
            c.lexicon = lexicon_from_json(item.value());
        } else if (k == "gateway") {
            const auto& g = item.value();
            if (!g.is_object()) throw ValidationError("gateway must be an object");
            for (const auto& gi : g.items()) {
                const auto& gk = gi.key();
                if (gk == "listen") {
                    std::tie(c.listen_address, c.port) = parse_listen(get<std::string>(g, "listen", "gateway"));
                } else if (gk == "waitingRoomMs") {
                    const auto range = get<std::vector<std::int64_t>>(g, "waitingRoomMs", "gateway");
                    if (range.size() != 2) throw ValidationError("gateway.waitingRoomMs must be [min, max]");
                    c.waiting_min_ms = range[0];
                    c.waiting_max_ms = range[1];
                } else if (gk == "logDir") {
                    c.log_dir = get<std::string>(g, "logDir", "gateway");
                } else if (gk == "seed") {
                    c.seed = get<std::uint64_t>(g, "seed", "gateway");
                } else if (gk == "threads") {
                    c.threads = get<int>(g, "threads", "gateway");
                } else {
                    throw ValidationError("unknown field '" + gk + "' in gateway");
                }
            }
        } else {
            throw ValidationError("unknown top-level field '" + k + "'");
        }
    }
    check_waiting(c);
    return c;
}

AppConfig load_app_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config " + path + " is not valid JSON: " + e.what());
    }
    return app_config_from_json(j);
}

void apply_env_overrides(AppConfig& c, const std::function<const char*(const char*)>& getenv)
{
    auto env = [&](const char* key) -> std::optional<std::string> {
        const char* v = getenv(key);
        if (!v || !*v) return std::nullopt;
        return std::string(v);
    };
    if (auto v = env("TYPEBOT_LISTEN")) std::tie(c.listen_address, c.port) = parse_listen(*v);
    if (auto v = env("TYPEBOT_WAITING_ROOM_MS")) {
        const auto comma = v->find(',');
        if (comma == std::string::npos) throw ValidationError("TYPEBOT_WAITING_ROOM_MS must be min,max");
        c.waiting_min_ms = static_cast<std::int64_t>(parse_u64(v->substr(0, comma), "TYPEBOT_WAITING_ROOM_MS"));
        c.waiting_max_ms = static_cast<std::int64_t>(parse_u64(v->substr(comma + 1), "TYPEBOT_WAITING_ROOM_MS"));
    }
    if (auto v = env("TYPEBOT_LOG_DIR")) c.log_dir = *v;
    if (auto v = env("TYPEBOT_DEFAULT_PRESET")) {
        auto p = preset_from_string(*v);
        if (!p || *p == Preset::Custom) throw ValidationError("TYPEBOT_DEFAULT_PRESET must be blue, green or red");
        auto next = preset_config(*p);
        next.backend = c.agent.backend;
        next.constraints = c.agent.constraints;
        c.agent = next;
    }
    if (auto v = env("TYPEBOT_SEED")) c.seed = parse_u64(*v, "TYPEBOT_SEED");
    if (auto v = env("TYPEBOT_THREADS")) c.threads = static_cast<int>(parse_u64(*v, "TYPEBOT_THREADS"));
    if (auto v = env("TYPEBOT_BACKEND_ENDPOINT")) {
        c.agent.backend.kind = BackendKind::Remote;
        c.agent.backend.endpoint = *v;
    }
    if (auto v = env("TYPEBOT_BACKEND_MODEL")) c.agent.backend.model = *v;
    check_waiting(c);
    validate(c.agent);
}

} // namespace typebot::gateway
