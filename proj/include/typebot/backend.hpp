#pragma once

#include "typebot/agent_config.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace typebot {

// The backend could not produce a reply (timeout, refused connection, bad status).
class BackendUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BackendRequest {
    std::string user_message;
    std::string prompt;      // user message plus the constraint line
    std::size_t index = 0;   // 0-based message number within the session
};

class ResponseBackend {
public:
    virtual ~ResponseBackend() = default;
    virtual std::string reply(const BackendRequest& request) = 0;
};

// Exact user-message match in the table, otherwise the corpus entry at
// index modulo corpus size, otherwise an empty reply.
class ScriptedBackend : public ResponseBackend {
public:
    ScriptedBackend(std::map<std::string, std::string> responses, std::vector<std::string> corpus);
    std::string reply(const BackendRequest& request) override;

private:
    std::map<std::string, std::string> responses_;
    std::vector<std::string> corpus_;
};

class EchoBackend : public ResponseBackend {
public:
    std::string reply(const BackendRequest& request) override { return request.user_message; }
};

// OpenAI-compatible chat completions endpoint, one stateless request per
// message. The API key is read from the environment variable named in the
// binding when the backend is created.
class RemoteLlmBackend : public ResponseBackend {
public:
    RemoteLlmBackend(std::string endpoint, std::string model, std::string api_key, int timeout_ms);
    std::string reply(const BackendRequest& request) override;

private:
    std::string base_;
    std::string path_;
    std::string model_;
    std::string api_key_;
    int timeout_ms_;
};

std::unique_ptr<ResponseBackend> make_backend(const BackendBinding& binding);

} // namespace typebot
