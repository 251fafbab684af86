#include "typebot/typo.hpp"

#include "typebot/random.hpp"
#include "typebot/utf8.hpp"

#include <cctype>
#include <vector>

namespace typebot {

const KeyboardLayout& qwerty_layout()
{
    static const KeyboardLayout layout = {
        {'q', "wa"},    {'w', "qeas"},   {'e', "wrsd"},   {'r', "etdf"},  {'t', "ryfg"},   {'y', "tugh"},
        {'u', "yihj"},  {'i', "uojk"},   {'o', "ipkl"},   {'p', "ol"},    {'a', "qwsz"},   {'s', "weadzx"},
        {'d', "ersfxc"}, {'f', "rtdgcv"}, {'g', "tyfhvb"}, {'h', "yugjbn"}, {'j', "uihknm"}, {'k', "iojlm"},
        {'l', "opk"},   {'z', "asx"},    {'x', "zsdc"},   {'c', "xdfv"},  {'v', "cfgb"},   {'b', "vghn"},
        {'n', "bhjm"},  {'m', "njk"},
    };
    return layout;
}

std::optional<Typo> generate_typo(std::string_view word, std::uint64_t seed, const KeyboardLayout& layout)
{
    const std::u32string chars = utf8::decode(word);
    if (chars.size() < 2) return std::nullopt;
    for (char32_t ch : chars) {
        if (!utf8::is_alpha(ch)) return std::nullopt;
    }

    std::vector<std::size_t> swappable;
    for (std::size_t i = 0; i + 1 < chars.size(); ++i) {
        if (chars[i] != chars[i + 1]) swappable.push_back(i);
    }
    std::vector<std::size_t> substitutable;
    for (std::size_t i = 0; i < chars.size(); ++i) {
        if (chars[i] < 0x80) {
            const auto lower = static_cast<char>(std::tolower(static_cast<int>(chars[i])));
            if (auto it = layout.find(lower); it != layout.end() && !it->second.empty()) substitutable.push_back(i);
        }
    }
    if (swappable.empty() && substitutable.empty()) return std::nullopt;

    Rng rng(seed);
    bool transpose = rng.bernoulli(0.5);
    if (swappable.empty()) transpose = false;
    if (substitutable.empty()) transpose = true;

    std::u32string detour = chars;
    if (transpose) {
        const std::size_t i = swappable[rng.below(swappable.size())];
        std::swap(detour[i], detour[i + 1]);
    } else {
        const std::size_t i = substitutable[rng.below(substitutable.size())];
        const bool upper = std::isupper(static_cast<int>(chars[i])) != 0;
        const auto& neighbours = layout.at(static_cast<char>(std::tolower(static_cast<int>(chars[i]))));
        // A neighbour equal to the original letter would be a no-op; layouts never list it.
        char replacement = neighbours[rng.below(neighbours.size())];
        if (upper) replacement = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement)));
        detour[i] = static_cast<char32_t>(replacement);
    }
    return Typo{utf8::encode(detour), std::string(word)};
}

} // namespace typebot
