#pragma once

#include "typebot/conversation_log.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace typebot {

// Mean and sample standard deviation (n - 1; 0 below two samples).
struct MetricSummary {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t n = 0;
};

MetricSummary summarize_values(const std::vector<double>& values);

struct SessionMetrics {
    std::string session_id;
    std::string preset;
    std::size_t user_words = 0;
    std::size_t user_sentences = 0;
    std::size_t agent_words = 0;
    std::size_t agent_sentences = 0;
    double duration_seconds = 0.0;
};

struct PresetStats {
    std::string preset;
    std::size_t sessions = 0;
    std::size_t user_words = 0;
    std::size_t user_sentences = 0;
    std::size_t agent_words = 0;
    std::size_t agent_sentences = 0;
    double duration_seconds = 0.0;
    MetricSummary user_words_per_session;
    MetricSummary user_sentences_per_session;
    MetricSummary agent_words_per_session;
    MetricSummary agent_sentences_per_session;
    MetricSummary duration_per_session;
};

struct InteractionStats {
    std::vector<SessionMetrics> sessions;
    std::vector<PresetStats> presets; // sorted by preset name
};

// Counts are recomputed from message text with the segmenter. Duration runs
// from the first user message to the completion of the last agent message.
SessionMetrics session_metrics(const ConversationLog& log);
InteractionStats conversation_stats(const std::vector<ConversationLog>& logs);

struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
};

// Ordinary least squares y = slope * x + intercept. Throws
// DegenerateInputError for fewer than two points or identical x values.
RegressionFit fit_regression(const std::vector<std::pair<double, double>>& points);

// (agent words, user words) per session, the axes of the word-count regression.
std::vector<std::pair<double, double>> word_count_points(const InteractionStats& stats);

nlohmann::ordered_json to_json(const MetricSummary& summary);
nlohmann::ordered_json to_json(const InteractionStats& stats);
nlohmann::ordered_json to_json(const RegressionFit& fit);

// One row per session, for plotting.
void write_sessions_csv(std::ostream& out, const InteractionStats& stats);

// Questionnaire scores: CSV with a header naming at least agent, metric and
// score columns (plain comma separation, no quoting). Groups by (agent, metric).
struct ScoreSummary {
    std::string agent;
    std::string metric;
    MetricSummary score;
};
std::vector<ScoreSummary> summarize_scores(std::istream& csv);

} // namespace typebot
