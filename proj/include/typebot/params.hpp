#pragma once

#include <json.hpp>

#include <optional>
#include <string>

namespace typebot {

// Normal distribution parameters of one delay source.
struct Pace {
    double mean = 0.0;
    double stddev = 0.0;

    friend bool operator==(const Pace&, const Pace&) = default;
};

// Hesitation parameters. Paces are in milliseconds except thinking_time (seconds).
struct TemporalParameters {
    Pace character_typing{15.0, 3.0};
    Pace space_lag{20.0, 5.0};
    Pace character_deletion{40.0, 10.0};
    Pace cursor_move{10.0, 3.0};
    double pause_rate = 0.0;
    Pace thinking_time{1.5, 0.5};

    friend bool operator==(const TemporalParameters&, const TemporalParameters&) = default;
};

struct LevelRates {
    double deletion = 0.0;
    double insertion = 0.0;
    double modification = 0.0;

    double sum() const { return deletion + insertion + modification; }
    friend bool operator==(const LevelRates&, const LevelRates&) = default;
};

// Self-editing rates per level. `paragraph` drives whole-sentence actions,
// `sentence` shapes the rewritten variant typed before a sentence-level
// modification, `word` drives word actions and `typo_rate` character typos.
struct EditingParameters {
    LevelRates paragraph;
    LevelRates sentence;
    LevelRates word;
    double typo_rate = 0.0;

    bool any_editing() const
    {
        return paragraph.sum() > 0 || sentence.sum() > 0 || word.sum() > 0 || typo_rate > 0;
    }
    friend bool operator==(const EditingParameters&, const EditingParameters&) = default;
};

struct ParamError {
    std::string level;
    double sum = 0.0;
    std::string message;
};

// Each rate in [0, 1] and each level's rates summing to at most 1.
std::optional<ParamError> validate_params(const EditingParameters& params);
std::optional<ParamError> validate_temporal(const TemporalParameters& params);

// Throws ValidationError with the ParamError message.
void ensure_valid(const EditingParameters& params);
void ensure_valid(const TemporalParameters& params);

// JSON field names follow the configuration reference (characterTypingPace,
// spaceLagPace, ..., paragraph/sentence/word/character). Parsing overlays the
// fields present in `j` on `base`; unknown keys and wrong types throw
// ValidationError. Parsing does not range-check; call ensure_valid for that.
nlohmann::ordered_json to_json(const TemporalParameters& params);
nlohmann::ordered_json to_json(const EditingParameters& params);
TemporalParameters temporal_from_json(const nlohmann::json& j, TemporalParameters base = {});
EditingParameters editing_from_json(const nlohmann::json& j, EditingParameters base = {});

} // namespace typebot
