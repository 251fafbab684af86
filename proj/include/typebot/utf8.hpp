#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace typebot::utf8 {

// Decodes UTF-8 into scalar values. Malformed bytes decode to U+FFFD so the
// function is total; callers that need exact round-trips must pass valid text.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);
std::string encode(char32_t ch);

bool is_valid(std::string_view text);

// Number of scalar values in a valid UTF-8 string.
std::size_t length(std::string_view text);

// Byte offset of the scalar at index `scalar_index` (or text.size() at the end).
std::size_t byte_offset(std::string_view text, std::size_t scalar_index);

// Scalar index of the byte offset `byte_index`, which must sit on a boundary.
std::size_t scalar_index(std::string_view text, std::size_t byte_index);

bool is_space(char32_t ch);
bool is_punct(char32_t ch);
bool is_alpha(char32_t ch);

} // namespace typebot::utf8
