#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace typebot {

// Lowercase key -> neighbouring keys on the physical keyboard.
using KeyboardLayout = std::map<char, std::string>;

const KeyboardLayout& qwerty_layout();

struct Typo {
    std::string detour; // what is typed first
    std::string final;  // the intended word
};

// One keyboard-adjacent substitution or one adjacent transposition, chosen by
// a seeded coin. Returns nullopt for words shorter than two letters or with
// non-alphabetic characters; the caller skips the action.
std::optional<Typo> generate_typo(std::string_view word, std::uint64_t seed,
                                  const KeyboardLayout& layout = qwerty_layout());

} // namespace typebot
