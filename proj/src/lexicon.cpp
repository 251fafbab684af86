#include "typebot/lexicon.hpp"

#include "typebot/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace typebot {

namespace {

std::string lower_ascii(std::string_view word)
{
    std::string out(word);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_single_word(std::string_view candidate)
{
    if (candidate.empty()) return false;
    for (char c : candidate) {
        const auto u = static_cast<unsigned char>(c);
        if (u >= 0x80) continue; // accented letters
        if (!std::isalpha(u) && c != '-' && c != '\'') return false;
    }
    return std::isalpha(static_cast<unsigned char>(candidate.front())) || static_cast<unsigned char>(candidate.front()) >= 0x80;
}

std::string match_case(std::string_view target, std::string candidate)
{
    if (target.empty() || candidate.empty()) return candidate;
    const bool first_upper = std::isupper(static_cast<unsigned char>(target.front()));
    bool all_upper = target.size() > 1;
    for (char c : target) {
        if (std::isalpha(static_cast<unsigned char>(c)) && !std::isupper(static_cast<unsigned char>(c))) all_upper = false;
    }
    if (all_upper) {
        for (auto& c : candidate) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    } else if (first_upper) {
        candidate.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(candidate.front())));
    }
    return candidate;
}

std::vector<std::string> filter_candidates(const std::string& key, const std::vector<std::string>& raw)
{
    std::vector<std::string> out;
    for (const auto& c : raw) {
        const auto lowered = lower_ascii(c);
        if (!is_single_word(lowered) || lowered == key) continue;
        if (std::find(out.begin(), out.end(), lowered) != out.end()) continue;
        out.push_back(lowered);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read lexicon file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Lexicon::Lexicon(std::vector<std::string> redundant_words, SynonymMap offline,
                 std::optional<RemoteSynonymService> remote)
    : redundant_(std::move(redundant_words)), remote_(std::move(remote))
{
    if (redundant_.empty()) throw ValidationError("redundant-word library is empty");
    for (auto& [word, list] : offline) {
        const auto key = lower_ascii(word);
        auto& merged = offline_[key];
        for (const auto& c : list) merged.push_back(c);
    }
    kind_ = remote_ ? SynonymSourceKind::Chain : SynonymSourceKind::Offline;
    if (remote_ && offline_.empty()) kind_ = SynonymSourceKind::Remote;
}

std::shared_ptr<const Lexicon> Lexicon::bundled()
{
    static const auto instance =
        std::make_shared<const Lexicon>(lexicon_data::default_fillers(), lexicon_data::default_synonyms());
    return instance;
}

std::shared_ptr<const Lexicon> Lexicon::load(const LexiconOptions& options)
{
    auto fillers = options.fillers_file ? parse_fillers(read_file(*options.fillers_file))
                                        : lexicon_data::default_fillers();
    auto synonyms = options.synonyms_file ? parse_synonym_map(read_file(*options.synonyms_file))
                                          : lexicon_data::default_synonyms();
    return std::make_shared<const Lexicon>(std::move(fillers), std::move(synonyms), options.remote);
}

std::vector<std::string> Lexicon::parse_fillers(std::string_view text)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(first, last - first + 1));
    }
    if (out.empty()) throw ValidationError("redundant-word library is empty");
    return out;
}

SynonymMap Lexicon::parse_synonym_map(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("synonym map is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("synonym map must be a JSON object");
    SynonymMap out;
    for (const auto& [word, list] : j.items()) {
        if (!list.is_array()) throw ValidationError("synonyms of '" + word + "' must be an array");
        auto& entry = out[word];
        for (const auto& s : list) {
            if (!s.is_string()) throw ValidationError("synonyms of '" + word + "' must be strings");
            entry.push_back(s.get<std::string>());
        }
    }
    return out;
}

std::optional<std::vector<std::string>> Lexicon::fetch_remote(const std::string& key) const
{
    const auto& endpoint = remote_->endpoint;
    const auto scheme_end = endpoint.find("://");
    const auto path_start = endpoint.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string host = endpoint.substr(0, path_start);
    std::string base = path_start == std::string::npos ? "" : endpoint.substr(path_start);
    while (!base.empty() && base.back() == '/') base.pop_back();

    try {
        httplib::Client client(host);
        const auto seconds = remote_->timeout_ms / 1000;
        const auto micros = (remote_->timeout_ms % 1000) * 1000;
        client.set_connection_timeout(seconds, micros);
        client.set_read_timeout(seconds, micros);
        client.set_write_timeout(seconds, micros);
        const auto res = client.Get(base + "/words/" + httplib::detail::encode_url(key) + "/synonyms");
        if (!res || res->status != 200) return std::nullopt;
        const auto body = nlohmann::json::parse(res->body, nullptr, false);
        if (body.is_discarded() || !body.contains("synonyms") || !body["synonyms"].is_array()) return std::nullopt;
        std::vector<std::string> out;
        for (const auto& s : body["synonyms"]) {
            if (s.is_string()) out.push_back(s.get<std::string>());
        }
        return out;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::vector<std::string> Lexicon::candidates(std::string_view word) const
{
    const auto key = lower_ascii(word);
    {
        std::lock_guard lock(cache_mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
    }

    std::vector<std::string> resolved;
    if (remote_) {
        if (auto remote = fetch_remote(key)) resolved = filter_candidates(key, *remote);
    }
    if (resolved.empty() && kind_ != SynonymSourceKind::Remote) {
        if (auto it = offline_.find(key); it != offline_.end()) resolved = filter_candidates(key, it->second);
    }

    std::lock_guard lock(cache_mutex_);
    // First writer wins so concurrent lookups agree on one snapshot.
    auto [it, inserted] = cache_.emplace(key, std::make_shared<const std::vector<std::string>>(std::move(resolved)));
    return *it->second;
}

std::optional<std::string> Lexicon::synonym(std::string_view word, std::uint64_t seed) const
{
    if (word.empty()) return std::nullopt;
    const auto list = candidates(word);
    if (list.empty()) return std::nullopt;
    Rng rng(derive_seed(seed, hash_string(lower_ascii(word))));
    return match_case(word, list[rng.below(list.size())]);
}

std::string Lexicon::redundant_word(Rng& rng) const
{
    return redundant_[rng.below(redundant_.size())];
}

} // namespace typebot
