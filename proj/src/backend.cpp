#include "typebot/backend.hpp"

#include "typebot/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>

namespace typebot {

ScriptedBackend::ScriptedBackend(std::map<std::string, std::string> responses, std::vector<std::string> corpus)
    : responses_(std::move(responses)), corpus_(std::move(corpus))
{
}

std::string ScriptedBackend::reply(const BackendRequest& request)
{
    if (auto it = responses_.find(request.user_message); it != responses_.end()) return it->second;
    if (corpus_.empty()) return {};
    return corpus_[request.index % corpus_.size()];
}

RemoteLlmBackend::RemoteLlmBackend(std::string endpoint, std::string model, std::string api_key, int timeout_ms)
    : model_(std::move(model)), api_key_(std::move(api_key)), timeout_ms_(timeout_ms)
{
    const auto scheme = endpoint.find("://");
    if (scheme == std::string::npos) throw ValidationError("backend endpoint must be an http(s) URL: " + endpoint);
    const auto slash = endpoint.find('/', scheme + 3);
    base_ = endpoint.substr(0, slash);
    path_ = slash == std::string::npos ? "/v1/chat/completions" : endpoint.substr(slash);
}

std::string RemoteLlmBackend::reply(const BackendRequest& request)
{
    httplib::Client client(base_);
    const auto seconds = timeout_ms_ / 1000;
    const auto micros = (timeout_ms_ % 1000) * 1000;
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);
    if (!api_key_.empty()) client.set_bearer_token_auth(api_key_);

    nlohmann::json body = {{"messages", {{{"role", "user"}, {"content", request.prompt}}}}};
    if (!model_.empty()) body["model"] = model_;
    auto res = client.Post(path_, body.dump(), "application/json");
    if (!res) throw BackendUnavailable("backend request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw BackendUnavailable("backend answered HTTP " + std::to_string(res->status));
    try {
        const auto j = nlohmann::json::parse(res->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw BackendUnavailable(std::string("backend reply not understood: ") + e.what());
    }
}

std::unique_ptr<ResponseBackend> make_backend(const BackendBinding& binding)
{
    switch (binding.kind) {
    case BackendKind::Scripted: return std::make_unique<ScriptedBackend>(binding.responses, binding.corpus);
    case BackendKind::Echo: return std::make_unique<EchoBackend>();
    case BackendKind::Remote: {
        std::string key;
        if (!binding.auth_env.empty()) {
            if (const char* v = std::getenv(binding.auth_env.c_str())) key = v;
        }
        return std::make_unique<RemoteLlmBackend>(binding.endpoint, binding.model, key, binding.timeout_ms);
    }
    }
    return std::make_unique<EchoBackend>();
}

} // namespace typebot
