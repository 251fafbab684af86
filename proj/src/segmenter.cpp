#include "typebot/segmenter.hpp"

#include "typebot/errors.hpp"
#include "typebot/utf8.hpp"

#include <string>

namespace typebot {

namespace {

struct Scalar {
    char32_t ch;
    std::size_t begin; // byte offset
    std::size_t end;
};

std::vector<Scalar> scan(std::string_view text)
{
    std::vector<Scalar> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t len = 1;
        const auto lead = static_cast<unsigned char>(text[pos]);
        if (lead >= 0xF0) len = 4;
        else if (lead >= 0xE0) len = 3;
        else if (lead >= 0xC0) len = 2;
        if (pos + len > text.size()) len = text.size() - pos;
        const auto decoded = utf8::decode(text.substr(pos, len));
        out.push_back({decoded.empty() ? char32_t{0xFFFD} : decoded.front(), pos, pos + len});
        pos += len;
    }
    return out;
}

bool is_terminal(char32_t ch)
{
    return ch == U'.' || ch == U'!' || ch == U'?' || ch == 0x2026;
}

bool is_closer(char32_t ch)
{
    return ch == U'"' || ch == U'\'' || ch == U')' || ch == U']' || ch == U'}' || ch == 0x201D || ch == 0x2019;
}

bool is_word_char(char32_t ch)
{
    return !utf8::is_space(ch) && !utf8::is_punct(ch);
}

// Scalar index ranges [first, last) for each paragraph, trimmed of whitespace.
std::vector<std::pair<std::size_t, std::size_t>> find_paragraphs(const std::vector<Scalar>& s)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        while (i < n && utf8::is_space(s[i].ch)) ++i;
        if (i == n) break;
        const std::size_t first = i;
        std::size_t last_visible = i;
        // Walk forward until a blank line: newline, optional horizontal space, newline.
        while (i < n) {
            if (s[i].ch == U'\n') {
                std::size_t j = i + 1;
                while (j < n && utf8::is_space(s[j].ch) && s[j].ch != U'\n') ++j;
                if (j < n && s[j].ch == U'\n') break;
            }
            if (!utf8::is_space(s[i].ch)) last_visible = i;
            ++i;
        }
        out.emplace_back(first, last_visible + 1);
    }
    return out;
}

// Scalar ranges of sentence candidates inside a paragraph.
std::vector<std::pair<std::size_t, std::size_t>> find_sentences(const std::vector<Scalar>& s, std::size_t first,
                                                                std::size_t last)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = first;
    while (i < last) {
        while (i < last && utf8::is_space(s[i].ch)) ++i;
        if (i == last) break;
        const std::size_t start = i;
        std::size_t end = last;
        while (i < last) {
            if (is_terminal(s[i].ch)) {
                std::size_t j = i;
                while (j < last && is_terminal(s[j].ch)) ++j;
                while (j < last && is_closer(s[j].ch)) ++j;
                if (j == last || utf8::is_space(s[j].ch)) {
                    end = j;
                    i = j;
                    break;
                }
                i = j;
                continue;
            }
            ++i;
        }
        out.emplace_back(start, end);
        if (end == last) break;
    }
    return out;
}

bool has_word_char(const std::vector<Scalar>& s, std::size_t first, std::size_t last)
{
    for (std::size_t i = first; i < last; ++i) {
        if (is_word_char(s[i].ch)) return true;
    }
    return false;
}

} // namespace

std::vector<std::size_t> DocumentStructure::sentence_first_word() const
{
    std::vector<std::size_t> first(sentences.size(), words.size());
    for (std::size_t w = words.size(); w-- > 0;) first[words[w].sentence] = w;
    return first;
}

DocumentStructure segment(std::string_view text)
{
    DocumentStructure doc;
    doc.text = std::string(text);
    const auto s = scan(text);

    for (const auto& [pfirst, plast] : find_paragraphs(s)) {
        const std::size_t paragraph_index = doc.paragraphs.size();
        doc.paragraphs.push_back({s[pfirst].begin, s[plast - 1].end});

        // Punctuation-only candidates join the previous sentence (or the next one
        // when they open the paragraph).
        std::vector<std::pair<std::size_t, std::size_t>> merged;
        bool pending_prefix = false;
        std::size_t prefix_start = 0;
        for (auto [a, b] : find_sentences(s, pfirst, plast)) {
            if (!has_word_char(s, a, b)) {
                if (!merged.empty()) {
                    merged.back().second = b;
                } else if (!pending_prefix) {
                    pending_prefix = true;
                    prefix_start = a;
                }
                continue;
            }
            if (pending_prefix) {
                a = prefix_start;
                pending_prefix = false;
            }
            merged.emplace_back(a, b);
        }
        if (pending_prefix) merged.emplace_back(prefix_start, plast);

        for (const auto& [sfirst, slast] : merged) {
            const std::size_t sentence_index = doc.sentences.size();
            doc.sentences.push_back({{s[sfirst].begin, s[slast - 1].end}, paragraph_index});

            const std::size_t words_before = doc.words.size();
            std::size_t i = sfirst;
            while (i < slast) {
                while (i < slast && utf8::is_space(s[i].ch)) ++i;
                if (i == slast) break;
                std::size_t token_end = i;
                while (token_end < slast && !utf8::is_space(s[token_end].ch)) ++token_end;
                std::size_t a = i;
                std::size_t b = token_end;
                while (a < b && utf8::is_punct(s[a].ch)) ++a;
                while (b > a && utf8::is_punct(s[b - 1].ch)) --b;
                if (a < b) {
                    doc.words.push_back({{s[a].begin, s[b - 1].end}, sentence_index, doc.words.size() == words_before});
                }
                i = token_end;
            }
            if (doc.words.size() == words_before) {
                // Sentence made only of punctuation: its first token stands in as the word.
                std::size_t token_end = sfirst;
                while (token_end < slast && !utf8::is_space(s[token_end].ch)) ++token_end;
                doc.words.push_back({{s[sfirst].begin, s[token_end - 1].end}, sentence_index, true});
            }
        }
    }
    return doc;
}

namespace {

void require_blank(std::string_view text, std::size_t from, std::size_t to, const char* where)
{
    for (char32_t ch : utf8::decode(text.substr(from, to - from))) {
        if (!utf8::is_space(ch)) {
            throw StructureError(std::string("visible text outside ") + where + " spans at byte " + std::to_string(from));
        }
    }
}

} // namespace

std::string flatten(const DocumentStructure& doc)
{
    const std::string_view text = doc.text;
    std::string out;
    out.reserve(text.size());

    std::size_t cursor = 0;
    std::size_t next_sentence = 0;
    std::size_t next_word = 0;
    for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
        const Span& para = doc.paragraphs[p];
        if (para.begin < cursor || para.end > text.size() || para.begin >= para.end) {
            throw StructureError("paragraph " + std::to_string(p) + " out of order or out of bounds");
        }
        require_blank(text, cursor, para.begin, "paragraph");
        out.append(text.substr(cursor, para.begin - cursor));

        std::size_t inner = para.begin;
        std::size_t sentences_here = 0;
        while (next_sentence < doc.sentences.size() && doc.sentences[next_sentence].paragraph == p) {
            const auto& sent = doc.sentences[next_sentence];
            if (sent.span.begin < inner || !para.contains(sent.span) || sent.span.empty()) {
                throw StructureError("sentence " + std::to_string(next_sentence) + " not inside paragraph " +
                                     std::to_string(p));
            }
            require_blank(text, inner, sent.span.begin, "sentence");

            std::size_t word_cursor = sent.span.begin;
            std::size_t words_here = 0;
            while (next_word < doc.words.size() && doc.words[next_word].sentence == next_sentence) {
                const auto& word = doc.words[next_word];
                if (word.span.begin < word_cursor || !sent.span.contains(word.span) || word.span.empty()) {
                    throw StructureError("word " + std::to_string(next_word) + " not inside sentence " +
                                         std::to_string(next_sentence));
                }
                if (word.sentence_initial != (words_here == 0)) {
                    throw StructureError("sentence-initial flag wrong on word " + std::to_string(next_word));
                }
                word_cursor = word.span.end;
                ++words_here;
                ++next_word;
            }
            if (words_here == 0) throw StructureError("sentence " + std::to_string(next_sentence) + " has no words");

            out.append(text.substr(inner, sent.span.end - inner));
            inner = sent.span.end;
            ++sentences_here;
            ++next_sentence;
        }
        if (sentences_here == 0) throw StructureError("paragraph " + std::to_string(p) + " has no sentences");
        require_blank(text, inner, para.end, "sentence");
        out.append(text.substr(inner, para.end - inner));
        cursor = para.end;
    }
    if (next_sentence != doc.sentences.size()) throw StructureError("sentence with unknown paragraph");
    if (next_word != doc.words.size()) throw StructureError("word with unknown sentence");
    require_blank(text, cursor, text.size(), "paragraph");
    out.append(text.substr(cursor));
    return out;
}

std::size_t word_count(std::string_view text)
{
    return segment(text).words.size();
}

std::size_t sentence_count(std::string_view text)
{
    return segment(text).sentences.size();
}

} // namespace typebot
