#pragma once

#include "typebot/random.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace typebot {

using SynonymMap = std::map<std::string, std::vector<std::string>>;

// HTTP thesaurus answering GET {endpoint}/words/{word}/synonyms with
// {"word": ..., "synonyms": [...]}.
struct RemoteSynonymService {
    std::string endpoint;
    int timeout_ms = 1500;
};

enum class SynonymSourceKind { Offline, Remote, Chain };

struct LexiconOptions {
    std::optional<std::filesystem::path> fillers_file;  // one word per line
    std::optional<std::filesystem::path> synonyms_file; // JSON object word -> [synonym, ...]
    std::optional<RemoteSynonymService> remote;
};

// Redundant-word library plus synonym lookup with a per-handle cache.
// Shared between sessions; cache writes are serialized and cached entries
// never change once stored.
class Lexicon {
public:
    Lexicon(std::vector<std::string> redundant_words, SynonymMap offline,
            std::optional<RemoteSynonymService> remote = std::nullopt);

    Lexicon(const Lexicon&) = delete;
    Lexicon& operator=(const Lexicon&) = delete;

    // Bundled filler list and mini-thesaurus; no network.
    static std::shared_ptr<const Lexicon> bundled();

    // Files override the bundled data; throws ValidationError on empty or malformed data.
    static std::shared_ptr<const Lexicon> load(const LexiconOptions& options);

    static std::vector<std::string> parse_fillers(std::string_view text);
    static SynonymMap parse_synonym_map(std::string_view json_text);

    SynonymSourceKind source_kind() const { return kind_; }
    const std::vector<std::string>& redundant_words() const { return redundant_; }

    // Candidate synonyms for `word` (case-insensitive), excluding the word itself
    // and multi-word phrases. Remote first when configured, offline otherwise.
    std::vector<std::string> candidates(std::string_view word) const;

    // Seeded pick among the candidates, with the target's capitalization applied.
    std::optional<std::string> synonym(std::string_view word, std::uint64_t seed) const;

    std::string redundant_word(Rng& rng) const;

private:
    std::optional<std::vector<std::string>> fetch_remote(const std::string& key) const;

    std::vector<std::string> redundant_;
    SynonymMap offline_;
    std::optional<RemoteSynonymService> remote_;
    SynonymSourceKind kind_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::string, std::shared_ptr<const std::vector<std::string>>> cache_;
};

namespace lexicon_data {
const std::vector<std::string>& default_fillers();
const SynonymMap& default_synonyms();
} // namespace lexicon_data

} // namespace typebot
