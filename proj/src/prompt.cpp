#include "typebot/prompt.hpp"

#include "typebot/errors.hpp"

#include <regex>

namespace typebot {

std::string build_prompt(std::string_view user_message, const PromptConstraints& constraints)
{
    if (user_message.empty()) throw ValidationError("user message must not be empty");
    std::string out(user_message);
    out += "\n(Please provide a reply with no more than ";
    out += std::to_string(constraints.max_sentences);
    out += " sentences, and less than ";
    out += std::to_string(constraints.max_words);
    out += " words in total. Use ";
    out += constraints.language_restriction;
    out += " please.)";
    return out;
}

std::optional<ParsedPrompt> parse_prompt(std::string_view prompt)
{
    static const std::regex line(
        R"(\n\(Please provide a reply with no more than (\d+) sentences, and less than (\d+) words in total\. Use (.+) please\.\)$)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_search(prompt.begin(), prompt.end(), m, line)) return std::nullopt;
    ParsedPrompt parsed;
    parsed.user_message.assign(prompt.begin(), m[0].first);
    try {
        parsed.constraints.max_sentences = std::stoi(m[1].str());
        parsed.constraints.max_words = std::stoi(m[2].str());
    } catch (const std::exception&) {
        return std::nullopt;
    }
    parsed.constraints.language_restriction = m[3].str();
    return parsed;
}

} // namespace typebot
