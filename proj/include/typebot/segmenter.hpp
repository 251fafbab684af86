#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace typebot {

// Half-open byte range [begin, end) into the source text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool empty() const { return begin == end; }
    bool contains(const Span& other) const { return begin <= other.begin && other.end <= end; }
    bool overlaps(const Span& other) const { return begin < other.end && other.begin < end; }
    std::string_view view(std::string_view text) const { return text.substr(begin, end - begin); }

    friend bool operator==(const Span&, const Span&) = default;
};

struct SentenceSpan {
    Span span;
    std::size_t paragraph = 0;
};

struct WordSpan {
    Span span;
    std::size_t sentence = 0;
    bool sentence_initial = false;
};

// Paragraph / sentence / word segmentation of a final response. Characters
// are the scalar values inside word spans and are not stored separately.
struct DocumentStructure {
    std::string text;
    std::vector<Span> paragraphs;
    std::vector<SentenceSpan> sentences;
    std::vector<WordSpan> words;

    // Index of the first word of each sentence, or words.size() for a wordless sentence.
    std::vector<std::size_t> sentence_first_word() const;
};

// Rule-based segmentation: paragraphs split at blank lines, sentences after a
// run of . ! ? followed by whitespace or the end of the paragraph, words at
// whitespace with leading and trailing punctuation trimmed. Abbreviations
// such as "e.g." are not special-cased and end a sentence.
DocumentStructure segment(std::string_view text);

// Rebuilds the text from the span structure. Throws StructureError when the
// spans are out of order, out of bounds, mis-parented, or leave visible text
// uncovered.
std::string flatten(const DocumentStructure& structure);

// Counts used by conversation logs and the analyzer.
std::size_t word_count(std::string_view text);
std::size_t sentence_count(std::string_view text);

} // namespace typebot
