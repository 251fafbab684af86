#include "typebot/edit_planner.hpp"

#include "typebot/errors.hpp"
#include "typebot/typo.hpp"
#include "typebot/utf8.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace typebot {

const char* to_string(EditKind kind)
{
    switch (kind) {
    case EditKind::Delete: return "delete";
    case EditKind::Insert: return "insert";
    case EditKind::Modify: return "modify";
    }
    return "?";
}

const char* to_string(EditLevel level)
{
    switch (level) {
    case EditLevel::Sentence: return "sentence";
    case EditLevel::Word: return "word";
    case EditLevel::Character: return "character";
    }
    return "?";
}

const char* to_string(TriggerMode mode)
{
    return mode == TriggerMode::Inline ? "inline" : "retrospective";
}

namespace {

// Salts for independent sub-streams of the plan seed.
enum : std::uint64_t {
    kDrawStream = 1,
    kDetourStream = 2,
    kSynonymSalt = 3,
    kTypoSalt = 4,
    kTriggerSalt = 5,
    kVariantStream = 6,
};

std::optional<EditKind> categorical(Rng& rng, const LevelRates& rates)
{
    const double u = rng.uniform();
    if (u < rates.deletion) return EditKind::Delete;
    if (u < rates.deletion + rates.insertion) return EditKind::Insert;
    if (u < rates.deletion + rates.insertion + rates.modification) return EditKind::Modify;
    return std::nullopt;
}

std::size_t kind_index(EditKind kind)
{
    return static_cast<std::size_t>(kind);
}

std::string capitalize(std::string word)
{
    if (!word.empty()) word.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(word.front())));
    return word;
}

bool is_ascii_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Start of the whitespace run directly before `pos`, or nullopt when the byte
// before `pos` is not whitespace.
std::optional<std::size_t> leading_space_start(std::string_view text, std::size_t pos, std::size_t floor)
{
    if (pos == 0 || pos <= floor || !is_ascii_space(text[pos - 1])) return std::nullopt;
    std::size_t start = pos;
    while (start > floor && is_ascii_space(text[start - 1])) --start;
    return start;
}

struct Draft {
    EditAction action;
    std::size_t paragraph = 0;
};

// An omission whose region ends where another action's region starts leaves
// both detours at the same initial-text offset, so their order would be
// ambiguous. Such a pair keeps only the first action drawn.
bool touches_omission(const std::vector<Draft>& drafts, const EditAction& action)
{
    for (const auto& d : drafts) {
        if (d.action.kind == EditKind::Insert && d.action.region.end == action.region.begin) return true;
        if (action.kind == EditKind::Insert && action.region.end == d.action.region.begin) return true;
    }
    return false;
}

// Rewritten form of a sentence used as the detour of a sentence-level Modify:
// each non-initial word gets a categorical draw with the sentence-level rates.
std::optional<std::string> sentence_variant(const DocumentStructure& doc, std::size_t sentence_index,
                                            const EditingParameters& params, const Lexicon& lexicon, Rng& rng,
                                            std::uint64_t seed)
{
    const Span sent = doc.sentences[sentence_index].span;
    const std::string_view text = doc.text;

    struct Splice {
        Span region;
        std::string replacement;
    };
    std::vector<Splice> splices;
    std::optional<Splice> fallback;
    for (std::size_t w = 0; w < doc.words.size(); ++w) {
        const auto& word = doc.words[w];
        if (word.sentence != sentence_index || word.sentence_initial) continue;
        const auto kind = categorical(rng, params.sentence);
        const std::uint64_t word_seed = derive_seed(seed, derive_seed(kSynonymSalt, w));
        if (!fallback) {
            if (auto syn = lexicon.synonym(word.span.view(text), word_seed)) fallback = Splice{word.span, *syn};
        }
        if (!kind) continue;
        switch (*kind) {
        case EditKind::Modify:
            if (auto syn = lexicon.synonym(word.span.view(text), word_seed)) splices.push_back({word.span, *syn});
            break;
        case EditKind::Delete:
            splices.push_back({{word.span.begin, word.span.begin}, lexicon.redundant_word(rng) + " "});
            break;
        case EditKind::Insert:
            if (auto start = leading_space_start(text, word.span.begin, sent.begin)) {
                splices.push_back({{*start, word.span.end}, ""});
            }
            break;
        }
    }
    if (splices.empty()) {
        if (!fallback) return std::nullopt;
        splices.push_back(*fallback);
    }

    std::string out;
    std::size_t cursor = sent.begin;
    for (const auto& s : splices) {
        out.append(text.substr(cursor, s.region.begin - cursor));
        out.append(s.replacement);
        cursor = s.region.end;
    }
    out.append(text.substr(cursor, sent.end - cursor));
    if (out == sent.view(text)) return std::nullopt;
    return out;
}

} // namespace

TriggerPoint assign_trigger(std::size_t detour_end, std::size_t inline_anchor, std::size_t paragraph_end,
                            std::uint64_t seed)
{
    Rng rng(seed);
    const bool retrospective = rng.bernoulli(0.5);
    if (!retrospective) return {TriggerMode::Inline, inline_anchor};
    if (paragraph_end <= detour_end) return {TriggerMode::Inline, detour_end};
    const auto offset = rng.below(paragraph_end - detour_end);
    return {TriggerMode::Retrospective, detour_end + 1 + static_cast<std::size_t>(offset)};
}

EditPlan plan_edits(const DocumentStructure& doc, const EditingParameters& params, const Lexicon& lexicon,
                    std::uint64_t seed)
{
    ensure_valid(params);

    EditPlan plan;
    plan.final_text = doc.text;
    plan.params = params;
    plan.seed = seed;

    const std::string_view text = doc.text;
    Rng draw(derive_seed(seed, kDrawStream));
    Rng detour_rng(derive_seed(seed, kDetourStream));
    Rng variant_rng(derive_seed(seed, kVariantStream));

    std::vector<Draft> drafts;
    std::vector<bool> sentence_taken(doc.sentences.size(), false);
    std::vector<bool> word_taken(doc.words.size(), false);

    // Sentence level, driven by the paragraph rates.
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
        const auto& sent = doc.sentences[s];
        ++plan.stats.sentence.eligible;
        const auto kind = categorical(draw, params.paragraph);
        if (!kind) continue;
        ++plan.stats.sentence.drawn[kind_index(*kind)];

        EditAction action;
        action.kind = *kind;
        action.level = EditLevel::Sentence;
        action.target = sent.span;
        switch (*kind) {
        case EditKind::Delete:
            action.region = {sent.span.begin, sent.span.begin};
            action.detour = capitalize(lexicon.redundant_word(detour_rng)) + "... ";
            break;
        case EditKind::Insert: {
            // Only trailing sentences: the first sentence of a paragraph is never omitted.
            const bool first_in_paragraph = s == 0 || doc.sentences[s - 1].paragraph != sent.paragraph;
            if (first_in_paragraph) continue;
            action.region = {doc.sentences[s - 1].span.end, sent.span.end};
            break;
        }
        case EditKind::Modify: {
            auto variant = sentence_variant(doc, s, params, lexicon, variant_rng, seed);
            if (!variant) continue;
            action.region = sent.span;
            action.detour = std::move(*variant);
            break;
        }
        }
        if (touches_omission(drafts, action)) continue;
        ++plan.stats.sentence.applied[kind_index(*kind)];
        sentence_taken[s] = true;
        drafts.push_back({std::move(action), sent.paragraph});
    }

    // Word level; sentence-initial words are immune.
    for (std::size_t w = 0; w < doc.words.size(); ++w) {
        const auto& word = doc.words[w];
        if (sentence_taken[word.sentence] || word.sentence_initial) continue;
        ++plan.stats.word.eligible;
        const auto kind = categorical(draw, params.word);
        if (!kind) continue;
        ++plan.stats.word.drawn[kind_index(*kind)];

        EditAction action;
        action.kind = *kind;
        action.level = EditLevel::Word;
        action.target = word.span;
        switch (*kind) {
        case EditKind::Delete:
            action.region = {word.span.begin, word.span.begin};
            action.detour = lexicon.redundant_word(detour_rng) + " ";
            break;
        case EditKind::Insert: {
            const auto start = leading_space_start(text, word.span.begin, doc.sentences[word.sentence].span.begin);
            if (!start) continue;
            action.region = {*start, word.span.end};
            break;
        }
        case EditKind::Modify: {
            auto syn = lexicon.synonym(word.span.view(text), derive_seed(seed, derive_seed(kSynonymSalt, w)));
            if (!syn) continue;
            action.region = word.span;
            action.detour = std::move(*syn);
            break;
        }
        }
        if (touches_omission(drafts, action)) continue;
        ++plan.stats.word.applied[kind_index(*kind)];
        word_taken[w] = true;
        drafts.push_back({std::move(action), doc.sentences[word.sentence].paragraph});
    }

    // Character level: typos on words no other action touched.
    for (std::size_t w = 0; w < doc.words.size(); ++w) {
        const auto& word = doc.words[w];
        if (sentence_taken[word.sentence] || word_taken[w]) continue;
        ++plan.stats.character.eligible;
        if (!draw.bernoulli(params.typo_rate)) continue;
        const auto modify = kind_index(EditKind::Modify);
        ++plan.stats.character.drawn[modify];
        auto typo = generate_typo(word.span.view(text), derive_seed(seed, derive_seed(kTypoSalt, w)));
        if (!typo) continue;

        EditAction action;
        action.kind = EditKind::Modify;
        action.level = EditLevel::Character;
        action.target = word.span;
        action.region = word.span;
        action.detour = std::move(typo->detour);
        if (touches_omission(drafts, action)) continue;
        ++plan.stats.character.applied[modify];
        drafts.push_back({std::move(action), doc.sentences[word.sentence].paragraph});
    }

    std::sort(drafts.begin(), drafts.end(),
              [](const Draft& a, const Draft& b) { return a.action.region.begin < b.action.region.begin; });

    // Splice detours into the initial text.
    std::string initial;
    std::size_t cursor = 0;
    for (auto& d : drafts) {
        initial.append(text.substr(cursor, d.action.region.begin - cursor));
        const std::size_t at = initial.size();
        initial.append(d.action.detour);
        d.action.initial_region = {at, initial.size()};
        cursor = d.action.region.end;
    }
    initial.append(text.substr(cursor));
    plan.initial_text = initial;

    // Paragraph ends in initial-text bytes.
    std::vector<std::size_t> paragraph_end(doc.paragraphs.size());
    for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
        std::ptrdiff_t shift = 0;
        for (const auto& d : drafts) {
            if (d.action.region.begin < doc.paragraphs[p].end) {
                shift += static_cast<std::ptrdiff_t>(d.action.detour.size()) -
                         static_cast<std::ptrdiff_t>(d.action.region.size());
            }
        }
        paragraph_end[p] = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(doc.paragraphs[p].end) + shift);
    }

    const std::string_view init_view = plan.initial_text;
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        auto& a = drafts[i].action;
        const std::size_t para_end_bytes = paragraph_end[drafts[i].paragraph];
        std::size_t inline_bytes = a.initial_region.end;
        if (a.kind == EditKind::Insert) {
            // The omission is noticed right after the next word is typed.
            std::size_t p = inline_bytes;
            while (p < para_end_bytes && is_ascii_space(init_view[p])) ++p;
            while (p < para_end_bytes && !is_ascii_space(init_view[p])) ++p;
            inline_bytes = p;
        }
        a.trigger = assign_trigger(utf8::scalar_index(init_view, a.initial_region.end),
                                   utf8::scalar_index(init_view, inline_bytes),
                                   utf8::scalar_index(init_view, para_end_bytes),
                                   derive_seed(seed, derive_seed(kTriggerSalt, a.region.begin)));
    }

    std::stable_sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
        if (a.action.trigger.anchor != b.action.trigger.anchor)
            return a.action.trigger.anchor < b.action.trigger.anchor;
        return a.action.initial_region.begin < b.action.initial_region.begin;
    });
    plan.actions.reserve(drafts.size());
    for (auto& d : drafts) plan.actions.push_back(std::move(d.action));
    return plan;
}

std::string replay_plan(const EditPlan& plan)
{
    std::string buffer = plan.initial_text;
    struct Applied {
        std::size_t initial_begin;
        std::ptrdiff_t delta;
    };
    std::vector<Applied> applied;
    const std::string_view final_text = plan.final_text;
    for (std::size_t i = 0; i < plan.actions.size(); ++i) {
        const auto& a = plan.actions[i];
        std::ptrdiff_t shift = 0;
        for (const auto& r : applied) {
            if (r.initial_begin < a.initial_region.begin) shift += r.delta;
        }
        const auto pos = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(a.initial_region.begin) + shift);
        if (a.region.end > final_text.size() || pos + a.detour.size() > buffer.size() ||
            buffer.compare(pos, a.detour.size(), a.detour) != 0) {
            throw PlanIntegrityError("action " + std::to_string(i) + ": detour not found at its initial position");
        }
        const auto replacement = a.region.view(final_text);
        buffer.replace(pos, a.detour.size(), replacement);
        applied.push_back({a.initial_region.begin, static_cast<std::ptrdiff_t>(replacement.size()) -
                                                       static_cast<std::ptrdiff_t>(a.detour.size())});
    }
    return buffer;
}

void check_plan(const EditPlan& plan)
{
    const std::size_t typed_length = utf8::length(plan.initial_text);
    for (std::size_t i = 0; i < plan.actions.size(); ++i) {
        const auto& a = plan.actions[i];
        if (a.initial_region.end > plan.initial_text.size() ||
            plan.initial_text.compare(a.initial_region.begin, a.initial_region.size(), a.detour) != 0) {
            throw PlanIntegrityError("action " + std::to_string(i) + ": initial region does not hold its detour");
        }
        const std::size_t detour_end = utf8::scalar_index(plan.initial_text, a.initial_region.end);
        if (a.trigger.anchor < detour_end || a.trigger.anchor > typed_length) {
            throw PlanIntegrityError("action " + std::to_string(i) + ": anchor " + std::to_string(a.trigger.anchor) +
                                     " outside the typing order");
        }
        if (a.trigger.mode == TriggerMode::Retrospective && a.trigger.anchor == detour_end) {
            throw PlanIntegrityError("action " + std::to_string(i) + ": retrospective anchor at its own detour end");
        }
        if (i > 0 && plan.actions[i - 1].trigger.anchor > a.trigger.anchor) {
            throw PlanIntegrityError("actions are not ordered by anchor");
        }
        for (std::size_t j = 0; j < i; ++j) {
            const auto& b = plan.actions[j];
            if (a.target.overlaps(b.target)) {
                throw PlanIntegrityError("actions " + std::to_string(j) + " and " + std::to_string(i) +
                                         " target overlapping spans");
            }
            const bool region_clash = a.region.overlaps(b.region) ||
                                      (a.region.empty() && b.region.begin < a.region.begin && a.region.begin < b.region.end) ||
                                      (b.region.empty() && a.region.begin < b.region.begin && b.region.begin < a.region.end) ||
                                      (a.region.empty() && b.region.empty() && a.region.begin == b.region.begin) ||
                                      a.initial_region.begin == b.initial_region.begin;
            if (region_clash) {
                throw PlanIntegrityError("actions " + std::to_string(j) + " and " + std::to_string(i) +
                                         " rewrite overlapping text");
            }
        }
    }
}

} // namespace typebot
