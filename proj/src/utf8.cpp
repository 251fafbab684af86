#include "typebot/utf8.hpp"

namespace typebot::utf8 {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Returns the decoded scalar and advances `pos`; invalid sequences consume one byte.
char32_t next_scalar(std::string_view text, std::size_t& pos, bool& ok)
{
    const auto lead = static_cast<unsigned char>(text[pos]);
    ok = true;
    if (lead < 0x80) {
        ++pos;
        return lead;
    }

    std::size_t extra = 0;
    char32_t value = 0;
    char32_t min_value = 0;
    if ((lead & 0xE0) == 0xC0) {
        extra = 1;
        value = lead & 0x1F;
        min_value = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
        extra = 2;
        value = lead & 0x0F;
        min_value = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
        extra = 3;
        value = lead & 0x07;
        min_value = 0x10000;
    } else {
        ok = false;
        ++pos;
        return kReplacement;
    }

    if (pos + extra >= text.size()) {
        ok = false;
        ++pos;
        return kReplacement;
    }
    for (std::size_t i = 1; i <= extra; ++i) {
        const auto cont = static_cast<unsigned char>(text[pos + i]);
        if ((cont & 0xC0) != 0x80) {
            ok = false;
            ++pos;
            return kReplacement;
        }
        value = (value << 6) | (cont & 0x3F);
    }
    if (value < min_value || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
        ok = false;
        ++pos;
        return kReplacement;
    }
    pos += extra + 1;
    return value;
}

} // namespace

std::u32string decode(std::string_view text)
{
    std::u32string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    bool ok = true;
    while (pos < text.size()) out.push_back(next_scalar(text, pos, ok));
    return out;
}

std::string encode(char32_t ch)
{
    std::string out;
    if (ch < 0x80) {
        out.push_back(static_cast<char>(ch));
    } else if (ch < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (ch >> 6)));
        out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
    } else if (ch < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (ch >> 12)));
        out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (ch >> 18)));
        out.push_back(static_cast<char>(0x80 | ((ch >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
    }
    return out;
}

std::string encode(std::u32string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char32_t ch : text) out += encode(ch);
    return out;
}

bool is_valid(std::string_view text)
{
    std::size_t pos = 0;
    bool ok = true;
    while (pos < text.size()) {
        next_scalar(text, pos, ok);
        if (!ok) return false;
    }
    return true;
}

std::size_t length(std::string_view text)
{
    std::size_t n = 0;
    for (char c : text) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    }
    return n;
}

std::size_t byte_offset(std::string_view text, std::size_t scalar_index)
{
    std::size_t seen = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
            if (seen == scalar_index) return i;
            ++seen;
        }
    }
    return text.size();
}

std::size_t scalar_index(std::string_view text, std::size_t byte_index)
{
    return length(text.substr(0, byte_index));
}

bool is_space(char32_t ch)
{
    switch (ch) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
        return true;
    default:
        return ch >= 0x2000 && ch <= 0x200A;
    }
}

bool is_punct(char32_t ch)
{
    if (ch < 0x80) {
        return (ch >= 0x21 && ch <= 0x2F) || (ch >= 0x3A && ch <= 0x40) || (ch >= 0x5B && ch <= 0x60) ||
               (ch >= 0x7B && ch <= 0x7E);
    }
    // General punctuation block, Latin-1 punctuation, CJK punctuation.
    return (ch >= 0x2010 && ch <= 0x2027) || (ch >= 0x2030 && ch <= 0x205E) || ch == 0x00A1 || ch == 0x00AB ||
           ch == 0x00BB || ch == 0x00BF || ch == 0x00B7 || (ch >= 0x3001 && ch <= 0x3003) ||
           (ch >= 0x3008 && ch <= 0x3011);
}

bool is_alpha(char32_t ch)
{
    if (ch < 0x80) return (ch >= U'a' && ch <= U'z') || (ch >= U'A' && ch <= U'Z');
    // Latin-1 supplement and Latin extended letters; good enough for typo eligibility.
    return (ch >= 0x00C0 && ch <= 0x024F && ch != 0x00D7 && ch != 0x00F7);
}

} // namespace typebot::utf8
