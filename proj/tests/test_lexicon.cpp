#include "support/test_support.hpp"

#include "typebot/errors.hpp"
#include "typebot/lexicon.hpp"
#include "typebot/typo.hpp"
#include "typebot/utf8.hpp"

#include <doctest.h>
#include <httplib.h>

#include <atomic>
#include <fstream>
#include <thread>

using namespace typebot;

namespace {

// Minimal thesaurus service on a loopback port.
class StubThesaurus {
public:
    explicit StubThesaurus(int delay_ms = 0)
    {
        server_.Get(R"(/words/([^/]+)/synonyms)", [this, delay_ms](const httplib::Request& req, httplib::Response& res) {
            ++hits;
            if (delay_ms) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
            const std::string word = req.matches[1];
            if (word == "happy") {
                res.set_content(R"({"word":"happy","synonyms":["joyful","cheerful","happy","over the moon"]})",
                                "application/json");
            } else if (word == "broken") {
                res.set_content("not json", "text/plain");
            } else {
                res.status = 404;
            }
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~StubThesaurus()
    {
        server_.stop();
        thread_.join();
    }
    std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
    std::atomic<int> hits{0};

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

} // namespace

TEST_CASE("bundled lexicon: fillers and synonyms")
{
    const auto lex = Lexicon::bundled();
    CHECK(lex->source_kind() == SynonymSourceKind::Offline);
    CHECK(lex->redundant_words().size() >= 20);
    const auto c = lex->candidates("Happy");
    CHECK_FALSE(c.empty());
    CHECK(std::find(c.begin(), c.end(), "happy") == c.end());
    CHECK(lex->candidates("zzzz").empty());
    CHECK_FALSE(lex->synonym("zzzz", 1));

    // Case is carried over from the target.
    const auto lower = lex->synonym("happy", 4);
    const auto upper = lex->synonym("Happy", 4);
    REQUIRE(lower);
    REQUIRE(upper);
    CHECK(std::islower(static_cast<unsigned char>((*lower)[0])));
    CHECK(std::isupper(static_cast<unsigned char>((*upper)[0])));
    CHECK(lex->synonym("happy", 4) == lower);
}

TEST_CASE("lexicon loading from files")
{
    testing::TempDir dir;
    {
        std::ofstream(dir.path() / "fillers.txt") << "um\n\n  uh  \n";
        std::ofstream(dir.path() / "syn.json") << R"({"fast":["rapid","fast"]})";
        std::ofstream(dir.path() / "bad.json") << R"({"fast":"rapid"})";
        std::ofstream(dir.path() / "empty.txt") << "\n\n";
    }
    LexiconOptions o;
    o.fillers_file = dir.path() / "fillers.txt";
    o.synonyms_file = dir.path() / "syn.json";
    const auto lex = Lexicon::load(o);
    CHECK(lex->redundant_words() == std::vector<std::string>{"um", "uh"});
    CHECK(lex->candidates("fast") == std::vector<std::string>{"rapid"});
    CHECK(lex->candidates("happy").empty());

    o.synonyms_file = dir.path() / "bad.json";
    CHECK_THROWS_AS(Lexicon::load(o), ValidationError);
    o.synonyms_file.reset();
    o.fillers_file = dir.path() / "empty.txt";
    CHECK_THROWS_AS(Lexicon::load(o), ValidationError);
}

TEST_CASE("remote thesaurus with offline fallback")
{
    StubThesaurus stub;
    LexiconOptions o;
    o.remote = RemoteSynonymService{stub.endpoint(), 1000};
    const auto lex = Lexicon::load(o);

    // Remote answers: the word itself and phrases are filtered out.
    CHECK(lex->candidates("happy") == std::vector<std::string>{"joyful", "cheerful"});
    // Cached: a second lookup does not hit the service.
    const int before = stub.hits;
    CHECK(lex->candidates("HAPPY") == std::vector<std::string>{"joyful", "cheerful"});
    CHECK(stub.hits == before);
    // 404 and malformed bodies fall back to the bundled thesaurus.
    CHECK(lex->candidates("fast") == Lexicon::bundled()->candidates("fast"));
    CHECK(lex->candidates("broken").empty());
}

TEST_CASE("remote thesaurus timeout falls back")
{
    StubThesaurus slow(600);
    LexiconOptions o;
    o.remote = RemoteSynonymService{slow.endpoint(), 100};
    const auto lex = Lexicon::load(o);
    CHECK(lex->candidates("happy") == Lexicon::bundled()->candidates("happy"));

    LexiconOptions dead;
    dead.remote = RemoteSynonymService{"http://127.0.0.1:1", 200};
    CHECK(Lexicon::load(dead)->candidates("fast") == Lexicon::bundled()->candidates("fast"));
}

TEST_CASE("typos differ from the word by one substitution or transposition")
{
    const auto& layout = qwerty_layout();
    Rng rng(8);
    int substitutions = 0, transpositions = 0;
    for (int i = 0; i < 500; ++i) {
        std::string word;
        const auto len = 2 + rng.below(8);
        for (std::size_t k = 0; k < len; ++k) word += static_cast<char>('a' + rng.below(26));
        if (i % 3 == 0) word[0] = static_cast<char>(word[0] - 32);
        const auto typo = generate_typo(word, rng.next_u64());
        REQUIRE(typo);
        CHECK(typo->final == word);
        REQUIRE(typo->detour.size() == word.size());
        std::vector<std::size_t> diff;
        for (std::size_t k = 0; k < word.size(); ++k) {
            if (word[k] != typo->detour[k]) diff.push_back(k);
        }
        if (diff.size() == 1) {
            ++substitutions;
            const char orig = static_cast<char>(std::tolower(static_cast<unsigned char>(word[diff[0]])));
            const char got = static_cast<char>(std::tolower(static_cast<unsigned char>(typo->detour[diff[0]])));
            CHECK(layout.at(orig).find(got) != std::string::npos);
        } else {
            REQUIRE(diff.size() == 2);
            CHECK(diff[1] == diff[0] + 1);
            CHECK(word[diff[0]] == typo->detour[diff[1]]);
            CHECK(word[diff[1]] == typo->detour[diff[0]]);
            ++transpositions;
        }
    }
    CHECK(substitutions > 100);
    CHECK(transpositions > 100);
    CHECK_FALSE(generate_typo("a", 1));
    CHECK_FALSE(generate_typo("42", 1));
    const auto accented = generate_typo("caf\xC3\xA9", 1);
    REQUIRE(accented);
    CHECK(accented->final == "caf\xC3\xA9");
    CHECK(utf8::decode(accented->detour).size() == 4);
}
