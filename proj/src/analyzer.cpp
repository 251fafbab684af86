#include "typebot/analyzer.hpp"

#include "typebot/errors.hpp"
#include "typebot/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace typebot {

MetricSummary summarize_values(const std::vector<double>& values)
{
    MetricSummary s;
    s.n = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

SessionMetrics session_metrics(const ConversationLog& log)
{
    ConversationLog recounted = log;
    for (auto& m : recounted.messages) {
        m.words = word_count(m.text);
        m.sentences = sentence_count(m.text);
    }
    const auto summary = summarize(recounted);
    return {log.session_id,           log.preset,           summary.user_words,
            summary.user_sentences,   summary.agent_words,  summary.agent_sentences,
            summary.duration_seconds};
}

InteractionStats conversation_stats(const std::vector<ConversationLog>& logs)
{
    InteractionStats stats;
    std::map<std::string, std::vector<const SessionMetrics*>> by_preset;
    stats.sessions.reserve(logs.size());
    for (const auto& log : logs) stats.sessions.push_back(session_metrics(log));
    for (const auto& s : stats.sessions) by_preset[s.preset].push_back(&s);

    for (const auto& [preset, sessions] : by_preset) {
        PresetStats p;
        p.preset = preset;
        p.sessions = sessions.size();
        std::vector<double> uw, us, aw, as, dur;
        for (const auto* s : sessions) {
            p.user_words += s->user_words;
            p.user_sentences += s->user_sentences;
            p.agent_words += s->agent_words;
            p.agent_sentences += s->agent_sentences;
            p.duration_seconds += s->duration_seconds;
            uw.push_back(static_cast<double>(s->user_words));
            us.push_back(static_cast<double>(s->user_sentences));
            aw.push_back(static_cast<double>(s->agent_words));
            as.push_back(static_cast<double>(s->agent_sentences));
            dur.push_back(s->duration_seconds);
        }
        p.user_words_per_session = summarize_values(uw);
        p.user_sentences_per_session = summarize_values(us);
        p.agent_words_per_session = summarize_values(aw);
        p.agent_sentences_per_session = summarize_values(as);
        p.duration_per_session = summarize_values(dur);
        stats.presets.push_back(std::move(p));
    }
    return stats;
}

RegressionFit fit_regression(const std::vector<std::pair<double, double>>& points)
{
    if (points.size() < 2) throw DegenerateInputError("regression needs at least two points");
    const double n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw DegenerateInputError("all x values are identical");

    RegressionFit fit;
    fit.n = points.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.slope = 0.0;
        fit.intercept = my;
        fit.r_squared = 0.0;
        return fit;
    }
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - (fit.slope * x + fit.intercept);
        ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

std::vector<std::pair<double, double>> word_count_points(const InteractionStats& stats)
{
    std::vector<std::pair<double, double>> points;
    points.reserve(stats.sessions.size());
    for (const auto& s : stats.sessions) {
        points.emplace_back(static_cast<double>(s.agent_words), static_cast<double>(s.user_words));
    }
    return points;
}

nlohmann::ordered_json to_json(const MetricSummary& s)
{
    return {{"mean", s.mean}, {"std", s.stddev}, {"n", s.n}};
}

nlohmann::ordered_json to_json(const InteractionStats& stats)
{
    nlohmann::ordered_json presets = nlohmann::ordered_json::array();
    for (const auto& p : stats.presets) {
        presets.push_back({{"preset", p.preset},
                           {"sessions", p.sessions},
                           {"totals",
                            {{"userWords", p.user_words},
                             {"userSentences", p.user_sentences},
                             {"agentWords", p.agent_words},
                             {"agentSentences", p.agent_sentences},
                             {"durationSeconds", p.duration_seconds}}},
                           {"perSession",
                            {{"userWords", to_json(p.user_words_per_session)},
                             {"userSentences", to_json(p.user_sentences_per_session)},
                             {"agentWords", to_json(p.agent_words_per_session)},
                             {"agentSentences", to_json(p.agent_sentences_per_session)},
                             {"durationSeconds", to_json(p.duration_per_session)}}}});
    }
    return {{"sessions", stats.sessions.size()}, {"presets", presets}};
}

nlohmann::ordered_json to_json(const RegressionFit& fit)
{
    return {{"slope", fit.slope}, {"intercept", fit.intercept}, {"rSquared", fit.r_squared}, {"n", fit.n}};
}

void write_sessions_csv(std::ostream& out, const InteractionStats& stats)
{
    out << "session_id,preset,user_words,user_sentences,agent_words,agent_sentences,duration_seconds\n";
    for (const auto& s : stats.sessions) {
        out << s.session_id << ',' << s.preset << ',' << s.user_words << ',' << s.user_sentences << ','
            << s.agent_words << ',' << s.agent_sentences << ',' << s.duration_seconds << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return cells;
}

} // namespace

std::vector<ScoreSummary> summarize_scores(std::istream& csv)
{
    std::string line;
    if (!std::getline(csv, line)) return {};
    const auto header = split_csv_line(line);
    auto column = [&](const char* name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::invalid_argument(std::string("score CSV lacks a '") + name + "' column");
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto agent_col = column("agent");
    const auto metric_col = column("metric");
    const auto score_col = column("score");

    std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
    std::size_t line_no = 1;
    while (std::getline(csv, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv_line(line);
        const auto needed = std::max({agent_col, metric_col, score_col});
        if (cells.size() <= needed) {
            throw std::invalid_argument("score CSV line " + std::to_string(line_no) + " has too few columns");
        }
        double score = 0.0;
        try {
            std::size_t used = 0;
            score = std::stod(cells[score_col], &used);
            if (used != cells[score_col].size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::invalid_argument("score CSV line " + std::to_string(line_no) + " has a non-numeric score");
        }
        groups[{cells[agent_col], cells[metric_col]}].push_back(score);
    }

    std::vector<ScoreSummary> out;
    for (const auto& [key, values] : groups) out.push_back({key.first, key.second, summarize_values(values)});
    return out;
}

} // namespace typebot
