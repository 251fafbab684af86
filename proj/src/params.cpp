#include "typebot/params.hpp"

#include "typebot/errors.hpp"

#include <cmath>
#include <sstream>

namespace typebot {

namespace {

constexpr double kSumSlack = 1e-12;

std::string format_number(double value)
{
    std::ostringstream ss;
    ss << value;
    return ss.str();
}

std::optional<ParamError> check_level(const std::string& level, const LevelRates& rates)
{
    for (double r : {rates.deletion, rates.insertion, rates.modification}) {
        if (!(r >= 0.0 && r <= 1.0)) {
            return ParamError{level, rates.sum(),
                              level + " level rate " + format_number(r) + " is outside [0, 1]"};
        }
    }
    if (rates.sum() > 1.0 + kSumSlack) {
        return ParamError{level, rates.sum(),
                          level + " level rates sum to " + format_number(rates.sum()) + ", which exceeds 1"};
    }
    return std::nullopt;
}

std::optional<ParamError> check_pace(const std::string& name, const Pace& pace)
{
    if (!(pace.mean >= 0.0) || !std::isfinite(pace.mean) || !(pace.stddev >= 0.0) || !std::isfinite(pace.stddev)) {
        return ParamError{name, 0.0, name + " needs a finite mean >= 0 and std >= 0"};
    }
    return std::nullopt;
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) throw ValidationError("unknown field '" + item.key() + "' in " + where);
    }
}

double number_at(const nlohmann::json& j, const char* key, double fallback, const std::string& where)
{
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ValidationError(where + "." + key + " must be a number");
    return v.get<double>();
}

Pace pace_from_json(const nlohmann::json& j, Pace base, const std::string& where)
{
    reject_unknown(j, {"mean", "std"}, where);
    base.mean = number_at(j, "mean", base.mean, where);
    base.stddev = number_at(j, "std", base.stddev, where);
    return base;
}

nlohmann::ordered_json pace_to_json(const Pace& pace)
{
    return {{"mean", pace.mean}, {"std", pace.stddev}};
}

LevelRates rates_from_json(const nlohmann::json& j, LevelRates base, const std::string& where)
{
    reject_unknown(j, {"deletionRate", "insertionRate", "modificationRate"}, where);
    base.deletion = number_at(j, "deletionRate", base.deletion, where);
    base.insertion = number_at(j, "insertionRate", base.insertion, where);
    base.modification = number_at(j, "modificationRate", base.modification, where);
    return base;
}

nlohmann::ordered_json rates_to_json(const LevelRates& rates)
{
    return {{"deletionRate", rates.deletion},
            {"insertionRate", rates.insertion},
            {"modificationRate", rates.modification}};
}

} // namespace

std::optional<ParamError> validate_params(const EditingParameters& params)
{
    if (auto e = check_level("paragraph", params.paragraph)) return e;
    if (auto e = check_level("sentence", params.sentence)) return e;
    if (auto e = check_level("word", params.word)) return e;
    if (!(params.typo_rate >= 0.0 && params.typo_rate <= 1.0)) {
        return ParamError{"character", params.typo_rate,
                          "character level typoRate " + format_number(params.typo_rate) + " is outside [0, 1]"};
    }
    return std::nullopt;
}

std::optional<ParamError> validate_temporal(const TemporalParameters& params)
{
    if (auto e = check_pace("characterTypingPace", params.character_typing)) return e;
    if (auto e = check_pace("spaceLagPace", params.space_lag)) return e;
    if (auto e = check_pace("characterDeletionPace", params.character_deletion)) return e;
    if (auto e = check_pace("cursorMoveSpeed", params.cursor_move)) return e;
    if (auto e = check_pace("thinkingTime", params.thinking_time)) return e;
    if (!(params.pause_rate >= 0.0 && params.pause_rate <= 1.0)) {
        return ParamError{"pauseRate", params.pause_rate, "pauseRate must lie in [0, 1]"};
    }
    return std::nullopt;
}

void ensure_valid(const EditingParameters& params)
{
    if (auto e = validate_params(params)) throw ValidationError(e->message);
}

void ensure_valid(const TemporalParameters& params)
{
    if (auto e = validate_temporal(params)) throw ValidationError(e->message);
}

nlohmann::ordered_json to_json(const TemporalParameters& p)
{
    return {{"characterTypingPace", pace_to_json(p.character_typing)},
            {"spaceLagPace", pace_to_json(p.space_lag)},
            {"characterDeletionPace", pace_to_json(p.character_deletion)},
            {"cursorMoveSpeed", pace_to_json(p.cursor_move)},
            {"pauseRate", p.pause_rate},
            {"thinkingTime", pace_to_json(p.thinking_time)}};
}

nlohmann::ordered_json to_json(const EditingParameters& p)
{
    return {{"paragraph", rates_to_json(p.paragraph)},
            {"sentence", rates_to_json(p.sentence)},
            {"word", rates_to_json(p.word)},
            {"character", {{"typoRate", p.typo_rate}}}};
}

TemporalParameters temporal_from_json(const nlohmann::json& j, TemporalParameters base)
{
    const std::string where = "temporal";
    reject_unknown(j, {"characterTypingPace", "spaceLagPace", "characterDeletionPace", "cursorMoveSpeed", "pauseRate",
                       "thinkingTime"},
                   where);
    if (j.contains("characterTypingPace"))
        base.character_typing = pace_from_json(j["characterTypingPace"], base.character_typing, "characterTypingPace");
    if (j.contains("spaceLagPace")) base.space_lag = pace_from_json(j["spaceLagPace"], base.space_lag, "spaceLagPace");
    if (j.contains("characterDeletionPace"))
        base.character_deletion =
            pace_from_json(j["characterDeletionPace"], base.character_deletion, "characterDeletionPace");
    if (j.contains("cursorMoveSpeed"))
        base.cursor_move = pace_from_json(j["cursorMoveSpeed"], base.cursor_move, "cursorMoveSpeed");
    base.pause_rate = number_at(j, "pauseRate", base.pause_rate, where);
    if (j.contains("thinkingTime"))
        base.thinking_time = pace_from_json(j["thinkingTime"], base.thinking_time, "thinkingTime");
    return base;
}

EditingParameters editing_from_json(const nlohmann::json& j, EditingParameters base)
{
    reject_unknown(j, {"paragraph", "sentence", "word", "character"}, "editing");
    if (j.contains("paragraph")) base.paragraph = rates_from_json(j["paragraph"], base.paragraph, "editing.paragraph");
    if (j.contains("sentence")) base.sentence = rates_from_json(j["sentence"], base.sentence, "editing.sentence");
    if (j.contains("word")) base.word = rates_from_json(j["word"], base.word, "editing.word");
    if (j.contains("character")) {
        reject_unknown(j["character"], {"typoRate"}, "editing.character");
        base.typo_rate = number_at(j["character"], "typoRate", base.typo_rate, "editing.character");
    }
    return base;
}

} // namespace typebot
