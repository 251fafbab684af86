#pragma once

#include "typebot/agent_config.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace typebot {

// The user message followed by a newline and the fixed constraint line.
// Throws ValidationError for an empty message.
std::string build_prompt(std::string_view user_message, const PromptConstraints& constraints);

struct ParsedPrompt {
    std::string user_message;
    PromptConstraints constraints;
};

// Inverse of build_prompt; nullopt when the constraint line is missing.
std::optional<ParsedPrompt> parse_prompt(std::string_view prompt);

} // namespace typebot
