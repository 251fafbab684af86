#pragma once

// Helpers shared by the unit and acceptance tests. Oracles here are written
// independently of the library code they check.

#include "typebot/lexicon.hpp"
#include "typebot/params.hpp"
#include "typebot/random.hpp"
#include "typebot/typing_scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

namespace typebot::testing {

// Replays keystrokes on a UTF-32 buffer. Returns nullopt on any impossible event.
inline std::optional<std::string> naive_replay(const std::vector<KeystrokeEvent>& events)
{
    std::u32string buf;
    std::size_t caret = 0;
    for (const auto& e : events) {
        switch (e.kind) {
        case EventKind::TypeChar:
            buf.insert(buf.begin() + static_cast<std::ptrdiff_t>(caret), e.ch);
            ++caret;
            break;
        case EventKind::DeleteBackward:
            if (caret == 0) return std::nullopt;
            buf.erase(buf.begin() + static_cast<std::ptrdiff_t>(caret) - 1);
            --caret;
            break;
        case EventKind::MoveCursorTo:
            if (e.target > buf.size()) return std::nullopt;
            caret = e.target;
            break;
        case EventKind::Pause:
            break;
        }
    }
    std::string out;
    for (char32_t c : buf) {
        if (c < 0x80) {
            out += static_cast<char>(c);
        } else if (c < 0x800) {
            out += static_cast<char>(0xC0 | (c >> 6));
            out += static_cast<char>(0x80 | (c & 0x3F));
        } else if (c < 0x10000) {
            out += static_cast<char>(0xE0 | (c >> 12));
            out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (c & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (c >> 18));
            out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (c & 0x3F));
        }
    }
    return out;
}

// Vocabulary: the bundled thesaurus keys (so synonym swaps can happen) mixed
// with function words, numbers, contractions and non-ASCII words.
inline const std::vector<std::string>& vocabulary()
{
    static const std::vector<std::string> words = [] {
        std::vector<std::string> v;
        for (const auto& [key, _] : lexicon_data::default_synonyms()) v.push_back(key);
        for (const char* w : {"the", "a", "of", "to", "and", "in", "it", "we", "you", "that", "is", "was", "for",
                              "on", "with", "they", "I'm", "don't", "42", "3.5", "café", "naïve", "über", "😊",
                              "x", "co-op", "e-mail", "Zoë"}) {
            v.emplace_back(w);
        }
        return v;
    }();
    return words;
}

// Random multi-paragraph text with at most `max_words` words (at least one).
inline std::string random_text(Rng& rng, std::size_t max_words)
{
    const auto& vocab = vocabulary();
    const std::size_t total = 1 + rng.below(max_words);
    static const char* const enders[] = {".", "!", "?", "...", ".\"", "?!"};
    std::string out;
    std::size_t in_sentence = 0;
    std::size_t sentence_len = 1 + rng.below(14);
    for (std::size_t i = 0; i < total; ++i) {
        std::string w = vocab[rng.below(vocab.size())];
        if (in_sentence == 0 && !w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 32);
        if (in_sentence == 0 && rng.bernoulli(0.05)) w = "\"" + w;
        out += w;
        ++in_sentence;
        const bool last = i + 1 == total;
        if (in_sentence >= sentence_len || last) {
            out += enders[rng.below(6)];
            in_sentence = 0;
            sentence_len = 1 + rng.below(14);
            if (!last) out += rng.bernoulli(0.2) ? "\n\n" : (rng.bernoulli(0.1) ? "  " : " ");
        } else {
            if (rng.bernoulli(0.08)) out += ",";
            out += rng.bernoulli(0.03) ? "\n" : " ";
        }
    }
    return out;
}

inline LevelRates random_rates(Rng& rng)
{
    // Dirichlet-like split of a random budget in [0, 1].
    const double budget = rng.uniform();
    double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
    const double s = a + b + c;
    if (s == 0) return {};
    return {budget * a / s * 0.999, budget * b / s * 0.999, budget * c / s * 0.999};
}

inline EditingParameters random_editing(Rng& rng)
{
    EditingParameters p;
    p.paragraph = random_rates(rng);
    p.sentence = random_rates(rng);
    p.word = random_rates(rng);
    p.typo_rate = rng.uniform();
    return p;
}

inline TemporalParameters random_temporal(Rng& rng)
{
    TemporalParameters t;
    t.character_typing = {rng.uniform(0, 200), rng.uniform(0, 60)};
    t.space_lag = {rng.uniform(0, 300), rng.uniform(0, 80)};
    t.character_deletion = {rng.uniform(0, 200), rng.uniform(0, 60)};
    t.cursor_move = {rng.uniform(0, 50), rng.uniform(0, 20)};
    t.pause_rate = rng.uniform();
    t.thinking_time = {rng.uniform(0, 3), rng.uniform(0, 1)};
    return t;
}

// Asymptotic Kolmogorov distribution with the Stephens small-sample correction.
inline double ks_pvalue(double d, std::size_t n)
{
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

// KS statistic of samples against the continuous uniform CDF on [lo, hi].
inline double ks_uniform_statistic(std::vector<double> samples, double lo, double hi)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = std::clamp((samples[i] - lo) / (hi - lo), 0.0, 1.0);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

class TempDir {
public:
    TempDir()
    {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("typebot-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace typebot::testing
