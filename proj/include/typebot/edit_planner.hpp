#pragma once

#include "typebot/lexicon.hpp"
#include "typebot/params.hpp"
#include "typebot/segmenter.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace typebot {

enum class EditKind { Delete, Insert, Modify };
enum class EditLevel { Sentence, Word, Character };
enum class TriggerMode { Inline, Retrospective };

const char* to_string(EditKind kind);
const char* to_string(EditLevel level);
const char* to_string(TriggerMode mode);

// Where in the typing order a detour is resolved. `anchor` counts scalar
// values of the initial text typed so far.
struct TriggerPoint {
    TriggerMode mode = TriggerMode::Inline;
    std::size_t anchor = 0;

    friend bool operator==(const TriggerPoint&, const TriggerPoint&) = default;
};

// One detour. During first typing the bytes `region` of the final text are
// replaced by `detour`; resolving the action turns the detour back into the
// final text.
//
//   Delete: empty region before the target; detour is a planted redundant word or filler.
//   Insert: region is the target plus its leading whitespace; detour is empty.
//   Modify: region is the target; detour is a synonym, typo or rewritten sentence.
struct EditAction {
    EditKind kind = EditKind::Modify;
    EditLevel level = EditLevel::Word;
    Span target;         // element selected by the draw, in final-text bytes
    Span region;         // final-text bytes replaced during first typing
    std::string detour;
    Span initial_region; // where the detour sits in the initial text (bytes)
    TriggerPoint trigger;
};

struct LevelStats {
    std::size_t eligible = 0;
    std::array<std::size_t, 3> drawn{};   // indexed by EditKind
    std::array<std::size_t, 3> applied{}; // after dropping lexicon misses and ineligible kinds
};

struct PlanStats {
    LevelStats sentence;
    LevelStats word;
    LevelStats character;
};

struct EditPlan {
    std::string initial_text;
    std::vector<EditAction> actions; // ordered by trigger anchor
    std::string final_text;
    EditingParameters params;
    std::uint64_t seed = 0;
    PlanStats stats;
};

// Random detour plan for `structure`. Each eligible element gets one
// categorical draw (Delete d, Insert i, Modify m, nothing otherwise) per level;
// sentence-initial words are never word-level targets; an element receives at
// most one action. Identical inputs and seed give an identical plan.
// Throws ValidationError when `params` fail validate_params.
EditPlan plan_edits(const DocumentStructure& structure, const EditingParameters& params, const Lexicon& lexicon,
                    std::uint64_t seed);

// Coin flip between resolving right away (at `inline_anchor`) and later at a
// uniformly drawn offset in (detour_end, paragraph_end]. A retrospective draw
// with an empty range collapses to Inline at `detour_end`.
TriggerPoint assign_trigger(std::size_t detour_end, std::size_t inline_anchor, std::size_t paragraph_end,
                            std::uint64_t seed);

// Applies the actions in order to the initial text. Throws PlanIntegrityError
// when a detour is not where the plan says.
std::string replay_plan(const EditPlan& plan);

// Structural checks: disjoint targets and regions, anchors inside the typing
// order and after their own detour. Throws PlanIntegrityError.
void check_plan(const EditPlan& plan);

} // namespace typebot
