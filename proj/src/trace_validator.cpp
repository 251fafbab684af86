#include "typebot/trace_validator.hpp"

#include "typebot/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace typebot {

namespace {

constexpr double kMomentSigmas = 4.0;
constexpr double kRateSigmas = 3.0;
constexpr std::size_t kMinSamples = 30;
constexpr double kRoundingVariance = 1.0 / 12.0;

struct Samples {
    std::vector<double> values;
    std::vector<double> exact_expected; // per-sample expected value when the std is zero
};

double mean_of(const std::vector<double>& v)
{
    double sum = 0.0;
    for (double x : v) sum += x;
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v)
{
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void moment_checks(ValidationReport& report, const std::string& name, const Samples& s, bool exact,
                   DelayMoments expected, bool check_std = true)
{
    if (s.values.empty()) return;
    if (exact) {
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            if (s.values[i] != s.exact_expected[i]) ++mismatches;
        }
        ValidationCheck c{name + ".exact", mismatches == 0, static_cast<double>(mismatches), 0.0, 0.0, s.values.size(),
                          "gaps differing from the zero-variance value"};
        report.checks.push_back(c);
        return;
    }
    const std::size_t n = s.values.size();
    if (n < kMinSamples) {
        report.checks.push_back({name + ".mean", true, mean_of(s.values), expected.mean, 0.0, n,
                                 "skipped: fewer than 30 samples"});
        return;
    }
    const double sigma = std::sqrt(expected.variance);
    const double mean_tol = kMomentSigmas * sigma / std::sqrt(static_cast<double>(n)) + 1e-9;
    const double observed_mean = mean_of(s.values);
    report.checks.push_back({name + ".mean", std::abs(observed_mean - expected.mean) <= mean_tol, observed_mean,
                             expected.mean, mean_tol, n, ""});
    if (!check_std) return;
    const double std_tol = kMomentSigmas * sigma / std::sqrt(2.0 * static_cast<double>(n - 1)) + 1e-9;
    const double observed_std = std_of(s.values);
    report.checks.push_back(
        {name + ".std", std::abs(observed_std - sigma) <= std_tol, observed_std, sigma, std_tol, n, ""});
}

void rate_check(ValidationReport& report, const std::string& name, std::size_t hits, std::size_t trials, double rate)
{
    if (trials == 0) return;
    const double observed = static_cast<double>(hits) / static_cast<double>(trials);
    const double tol = kRateSigmas * std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials)) + 1e-12;
    report.checks.push_back({name, std::abs(observed - rate) <= tol, observed, rate, tol, trials, ""});
}

double round_ms(double v)
{
    return static_cast<double>(std::llround(v));
}

} // namespace

bool ValidationReport::passed() const
{
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

nlohmann::ordered_json ValidationReport::to_json() const
{
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json item = {{"name", c.name},         {"passed", c.passed},
                                       {"observed", c.observed}, {"expected", c.expected},
                                       {"tolerance", c.tolerance}, {"samples", c.samples}};
        if (!c.detail.empty()) item["detail"] = c.detail;
        list.push_back(item);
    }
    return {{"traces", traces}, {"passed", passed()}, {"checks", list}};
}

DelayMoments delay_moments(const Pace& pace, double scale)
{
    if (pace.stddev <= 0.0) return {std::max(pace.mean, 0.0) * scale, 0.0};
    const double alpha = -pace.mean / pace.stddev;
    const double pdf = std::exp(-0.5 * alpha * alpha) / std::sqrt(2.0 * std::numbers::pi);
    const double tail = 0.5 * std::erfc(alpha / std::numbers::sqrt2); // 1 - Phi(alpha)
    const double lambda = pdf / tail;
    const double mean = pace.mean + pace.stddev * lambda;
    const double variance = pace.stddev * pace.stddev * (1.0 + alpha * lambda - lambda * lambda);
    return {mean * scale, variance * scale * scale};
}

ValidationReport validate_traces(const std::vector<EventTrace>& traces, const TemporalParameters& temporal,
                                 const EditingParameters& editing)
{
    ValidationReport report;
    report.traces = traces.size();

    std::size_t text_failures = 0;
    std::size_t time_failures = 0;
    std::string first_failure;
    Samples chars, words, deletes, cursor, thinks;
    std::size_t word_starts = 0;
    std::size_t pauses = 0;
    PlanStats totals;

    const double char_exact = round_ms(std::max(temporal.character_typing.mean, 0.0));
    const double word_exact =
        round_ms(std::max(temporal.character_typing.mean, 0.0) + std::max(temporal.space_lag.mean, 0.0));
    const double delete_exact = round_ms(std::max(temporal.character_deletion.mean, 0.0));
    const double think_exact = round_ms(1000.0 * std::max(temporal.thinking_time.mean, 0.0));

    for (std::size_t ti = 0; ti < traces.size(); ++ti) {
        const auto& trace = traces[ti];
        try {
            if (apply_trace(trace.events) != trace.final_text) {
                ++text_failures;
                if (first_failure.empty()) first_failure = "trace " + std::to_string(ti) + ": replay differs";
            }
        } catch (const ReplayError& e) {
            ++text_failures;
            if (first_failure.empty()) first_failure = "trace " + std::to_string(ti) + ": " + e.what();
        }

        std::int64_t prev_t = 0;
        std::size_t prev_caret = 0;
        bool monotone = true;
        for (const auto& e : trace.events) {
            const double gap = static_cast<double>(e.t_ms - prev_t);
            if (e.t_ms < prev_t) monotone = false;
            switch (e.gap) {
            case GapKind::Char:
                chars.values.push_back(gap);
                chars.exact_expected.push_back(char_exact);
                break;
            case GapKind::Word:
                words.values.push_back(gap);
                words.exact_expected.push_back(word_exact);
                break;
            case GapKind::Delete:
                deletes.values.push_back(gap);
                deletes.exact_expected.push_back(delete_exact);
                break;
            case GapKind::Cursor: {
                const double distance =
                    static_cast<double>(e.target > prev_caret ? e.target - prev_caret : prev_caret - e.target);
                if (distance > 0) {
                    cursor.values.push_back(gap / distance);
                    cursor.exact_expected.push_back(round_ms(distance * std::max(temporal.cursor_move.mean, 0.0)) /
                                                    distance);
                }
                break;
            }
            case GapKind::Think:
                thinks.values.push_back(gap);
                thinks.exact_expected.push_back(think_exact);
                break;
            }
            if (e.kind == EventKind::Pause) ++pauses;
            if (e.kind == EventKind::TypeChar && e.gap == GapKind::Word) ++word_starts;
            prev_t = e.t_ms;
            prev_caret = e.caret;
        }
        if (!monotone) ++time_failures;

        for (auto [dst, src] : {std::pair{&totals.sentence, &trace.stats.sentence},
                                std::pair{&totals.word, &trace.stats.word},
                                std::pair{&totals.character, &trace.stats.character}}) {
            dst->eligible += src->eligible;
            for (std::size_t k = 0; k < 3; ++k) {
                dst->drawn[k] += src->drawn[k];
                dst->applied[k] += src->applied[k];
            }
        }
    }

    report.checks.push_back({"eventual-text", text_failures == 0, static_cast<double>(text_failures), 0.0, 0.0,
                             traces.size(), first_failure});
    report.checks.push_back({"monotone-timestamps", time_failures == 0, static_cast<double>(time_failures), 0.0, 0.0,
                             traces.size(), ""});

    auto with_rounding = [](DelayMoments m) {
        if (m.variance > 0) m.variance += kRoundingVariance;
        return m;
    };
    moment_checks(report, "characterTypingPace", chars, temporal.character_typing.stddev == 0.0,
                  with_rounding(delay_moments(temporal.character_typing)));
    {
        const auto c = delay_moments(temporal.character_typing);
        const auto s = delay_moments(temporal.space_lag);
        moment_checks(report, "spaceLagPace+characterTypingPace", words,
                      temporal.character_typing.stddev == 0.0 && temporal.space_lag.stddev == 0.0,
                      with_rounding({c.mean + s.mean, c.variance + s.variance}));
    }
    moment_checks(report, "characterDeletionPace", deletes, temporal.character_deletion.stddev == 0.0,
                  with_rounding(delay_moments(temporal.character_deletion)));
    {
        // Per-character cost; rounding noise shrinks with distance so only the mean is checked.
        auto m = delay_moments(temporal.cursor_move);
        m.variance += kRoundingVariance;
        moment_checks(report, "cursorMoveSpeed", cursor, temporal.cursor_move.stddev == 0.0, m, false);
    }
    moment_checks(report, "thinkingTime", thinks, temporal.thinking_time.stddev == 0.0,
                  with_rounding(delay_moments(temporal.thinking_time, 1000.0)));

    rate_check(report, "pauseRate", pauses, word_starts, temporal.pause_rate);

    const std::pair<const char*, double> sentence_rates[] = {{"paragraph.deletionRate", editing.paragraph.deletion},
                                                             {"paragraph.insertionRate", editing.paragraph.insertion},
                                                             {"paragraph.modificationRate",
                                                              editing.paragraph.modification}};
    const std::pair<const char*, double> word_rates[] = {{"word.deletionRate", editing.word.deletion},
                                                         {"word.insertionRate", editing.word.insertion},
                                                         {"word.modificationRate", editing.word.modification}};
    for (std::size_t k = 0; k < 3; ++k) {
        rate_check(report, sentence_rates[k].first, totals.sentence.drawn[k], totals.sentence.eligible,
                   sentence_rates[k].second);
        rate_check(report, word_rates[k].first, totals.word.drawn[k], totals.word.eligible, word_rates[k].second);
    }
    rate_check(report, "character.typoRate", totals.character.drawn[static_cast<std::size_t>(EditKind::Modify)],
               totals.character.eligible, editing.typo_rate);
    return report;
}

} // namespace typebot
