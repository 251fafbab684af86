// Command-line entry points: serve, trace, replay, validate, analyze.
// Exit codes: 0 ok, 1 I/O or data error (including failed validation),
// 2 configuration error.

#include "typebot/agent_session.hpp"
#include "typebot/analyzer.hpp"
#include "typebot/errors.hpp"
#include "typebot/gateway/gateway_config.hpp"
#include "typebot/gateway/log_store.hpp"
#include "typebot/gateway/server.hpp"
#include "typebot/random.hpp"
#include "typebot/trace_io.hpp"
#include "typebot/trace_validator.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace typebot;

namespace {

constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kConfigError = 2;

// Raised for unreadable inputs and malformed data files.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string preset;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--config", c.config, "Configuration file (JSON)");
    cmd->add_option("--seed", c.seed, "Seed; fixes every random choice");
    cmd->add_option("--preset", c.preset, "blue, green or red")
        ->check(CLI::IsMember({"blue", "green", "red"}, CLI::ignore_case));
    cmd->add_option("--out", c.out, "Output path");
}

gateway::AppConfig resolve_config(const Common& c)
{
    auto app = c.config.empty() ? gateway::AppConfig{} : gateway::load_app_config(c.config);
    if (!c.preset.empty()) {
        auto next = preset_config(*preset_from_string(c.preset));
        next.backend = app.agent.backend;
        next.constraints = app.agent.constraints;
        app.agent = next;
    }
    if (c.seed) app.seed = c.seed;
    return app;
}

std::shared_ptr<const Lexicon> make_lexicon(const LexiconOptions& o)
{
    if (!o.fillers_file && !o.synonyms_file && !o.remote) return Lexicon::bundled();
    return Lexicon::load(o);
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content)) throw DataError("cannot write " + path.string());
}

std::uint64_t fresh_seed()
{
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// --- trace ---------------------------------------------------------------

struct TraceArgs {
    Common common;
    std::string text;
    std::string input;
    std::string corpus;
};

int run_trace(const TraceArgs& a)
{
    const auto app = resolve_config(a.common);
    const auto lexicon = make_lexicon(app.lexicon);
    const std::uint64_t seed = app.seed ? *app.seed : fresh_seed();
    const auto& agent = app.agent;

    if (!a.corpus.empty()) {
        if (a.common.out.empty()) throw ValidationError("--corpus needs --out naming a directory");
        std::istringstream lines(read_file(a.corpus));
        std::size_t n = 0;
        for (std::string line; std::getline(lines, line);) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            const auto trace = make_trace(line, agent.temporal, agent.editing, *lexicon, derive_seed(seed, n));
            char name[32];
            std::snprintf(name, sizeof name, "trace-%05zu.jsonl", n + 1);
            write_file(fs::path(a.common.out) / name, trace_to_string(trace));
            ++n;
        }
        std::cerr << "wrote " << n << " traces to " << a.common.out << "\n";
        return kOk;
    }

    std::string text = a.text;
    if (!a.input.empty()) text = read_file(a.input);
    if (text.empty()) throw ValidationError("nothing to type: give TEXT, --input or --corpus");
    const auto trace = make_trace(text, agent.temporal, agent.editing, *lexicon, seed);
    const auto out = trace_to_string(trace);
    if (a.common.out.empty()) {
        std::cout << out;
    } else {
        write_file(a.common.out, out);
    }
    return kOk;
}

// --- replay --------------------------------------------------------------

int run_replay(const std::string& path)
{
    EventTrace trace;
    try {
        trace = read_trace_file(path);
    } catch (const TraceFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
    std::string text;
    try {
        text = apply_trace(trace.events);
    } catch (const ReplayError& e) {
        std::cerr << "error: event " << e.event_index() << ": " << e.what() << "\n";
        return kDataError;
    }
    std::map<std::string, std::size_t> counts = {
        {"type_char", 0}, {"delete_backward", 0}, {"move_cursor", 0}, {"pause", 0}};
    for (const auto& e : trace.events) ++counts[to_string(e.kind)];
    std::cout << text << "\n\n";
    std::cout << "duration_ms: " << trace.duration_ms() << "\n";
    std::cout << "events: " << trace.events.size() << "\n";
    for (const auto& [kind, n] : counts) std::cout << kind << ": " << n << "\n";
    if (text != trace.final_text) {
        std::cerr << "error: replayed text differs from the recorded final text\n";
        return kDataError;
    }
    return kOk;
}

// --- validate ------------------------------------------------------------

struct ValidateArgs {
    Common common;
    std::vector<std::string> paths;
    bool json = false;
};

std::vector<fs::path> collect_traces(const std::vector<std::string>& paths)
{
    std::vector<fs::path> files;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (const auto& e : fs::directory_iterator(p)) {
                if (e.is_regular_file() && e.path().extension() == ".jsonl") found.push_back(e.path());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::exists(p)) {
            files.emplace_back(p);
        } else {
            throw DataError("no such file or directory: " + p);
        }
    }
    return files;
}

int run_validate(const ValidateArgs& a)
{
    const auto files = collect_traces(a.paths);
    if (files.empty()) throw DataError("no trace files found");
    std::vector<EventTrace> traces;
    traces.reserve(files.size());
    for (const auto& f : files) {
        try {
            traces.push_back(read_trace_file(f));
        } catch (const TraceFormatError& e) {
            throw DataError(f.string() + ": " + e.what());
        }
    }
    TemporalParameters temporal = traces.front().temporal;
    EditingParameters editing = traces.front().editing;
    if (!a.common.config.empty() || !a.common.preset.empty()) {
        const auto app = resolve_config(a.common);
        temporal = app.agent.temporal;
        editing = app.agent.editing;
    }
    const auto report = validate_traces(traces, temporal, editing);
    if (a.json) {
        std::cout << report.to_json().dump(2) << "\n";
    } else {
        for (const auto& c : report.checks) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " observed=" << c.observed
                      << " expected=" << c.expected << " tolerance=" << c.tolerance << " n=" << c.samples;
            if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
            std::cout << "\n";
        }
        std::cout << (report.passed() ? "all checks passed" : "validation failed") << " over " << report.traces
                  << " traces\n";
    }
    return report.passed() ? kOk : kDataError;
}

// --- analyze -------------------------------------------------------------

struct AnalyzeArgs {
    Common common;
    std::string logs;
    std::string csv;
    std::string scores;
};

int run_analyze(const AnalyzeArgs& a)
{
    std::vector<ConversationLog> logs;
    try {
        if (!fs::exists(a.logs)) throw DataError("no such file or directory: " + a.logs);
        logs = read_log_path(a.logs);
    } catch (const LogFormatError& e) {
        throw DataError(e.what());
    }
    const auto stats = conversation_stats(logs);
    nlohmann::ordered_json report = to_json(stats);
    try {
        report["regression"] = to_json(fit_regression(word_count_points(stats)));
        report["regression"]["x"] = "agentWords";
        report["regression"]["y"] = "userWords";
    } catch (const DegenerateInputError& e) {
        report["regression"] = nullptr;
        report["regressionNote"] = e.what();
    }
    if (!a.scores.empty()) {
        std::istringstream in(read_file(a.scores));
        nlohmann::ordered_json scores = nlohmann::ordered_json::array();
        try {
            for (const auto& s : summarize_scores(in)) {
                scores.push_back({{"agent", s.agent}, {"metric", s.metric}, {"score", to_json(s.score)}});
            }
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
        report["scores"] = scores;
    }
    const auto text = report.dump(2) + "\n";
    if (a.common.out.empty()) {
        std::cout << text;
    } else {
        write_file(a.common.out, text);
    }
    if (!a.csv.empty()) {
        std::ostringstream csv;
        write_sessions_csv(csv, stats);
        write_file(a.csv, csv.str());
    }
    return kOk;
}

// --- serve ---------------------------------------------------------------

struct ServeArgs {
    Common common;
    std::string listen;
    std::string log_dir;
};

int run_serve(const ServeArgs& a)
{
    auto app = resolve_config(a.common);
    gateway::apply_env_overrides(app);
    if (!a.listen.empty()) std::tie(app.listen_address, app.port) = gateway::parse_listen(a.listen);
    if (!a.log_dir.empty()) app.log_dir = a.log_dir;
    if (a.common.seed) app.seed = a.common.seed;

    gateway::ServerOptions options;
    options.address = app.listen_address;
    options.port = app.port;
    options.threads = app.threads;
    options.seed = app.seed;
    options.session.waiting_min_ms = app.waiting_min_ms;
    options.session.waiting_max_ms = app.waiting_max_ms;
    options.session.defaults = app.agent;
    options.session.lexicon = make_lexicon(app.lexicon);
    options.session.sink = std::make_shared<gateway::JsonlLogStore>(app.log_dir);

    // Block the stop signals before any worker thread exists, then wait for them here.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    gateway::ChatServer server(options);
    try {
        server.start();
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
    std::cerr << "listening on " << app.listen_address << ":" << server.port() << " (path /chat), logs in "
              << app.log_dir << "\n";
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "stopping\n";
    server.stop();
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Human-like typing agent: chat gateway and offline trace tools"};
    app.require_subcommand(1);

    ServeArgs serve;
    auto* serve_cmd = app.add_subcommand("serve", "Run the chat gateway");
    add_common(serve_cmd, serve.common);
    serve_cmd->add_option("--listen", serve.listen, "host:port (overrides the config)");
    serve_cmd->add_option("--log-dir", serve.log_dir, "Conversation log directory");

    TraceArgs trace;
    auto* trace_cmd = app.add_subcommand("trace", "Generate keystroke traces for response text");
    add_common(trace_cmd, trace.common);
    trace_cmd->add_option("text", trace.text, "Response text to type");
    trace_cmd->add_option("--input", trace.input, "Read the response text from a file");
    trace_cmd->add_option("--corpus", trace.corpus, "One response per line; writes numbered traces into --out");

    std::string replay_path;
    auto* replay_cmd = app.add_subcommand("replay", "Replay a trace file and summarize it");
    replay_cmd->add_option("trace", replay_path, "Trace file")->required();

    ValidateArgs validate_args;
    auto* validate_cmd = app.add_subcommand("validate", "Check traces against their configuration");
    add_common(validate_cmd, validate_args.common);
    validate_cmd->add_option("paths", validate_args.paths, "Trace files or directories")->required();
    validate_cmd->add_flag("--json", validate_args.json, "Print the report as JSON");

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Interaction statistics from conversation logs");
    add_common(analyze_cmd, analyze.common);
    analyze_cmd->add_option("logs", analyze.logs, "Log file or directory")->required();
    analyze_cmd->add_option("--csv", analyze.csv, "Write per-session rows as CSV");
    analyze_cmd->add_option("--scores", analyze.scores, "Questionnaire CSV (agent,metric,score)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*serve_cmd) return run_serve(serve);
        if (*trace_cmd) return run_trace(trace);
        if (*replay_cmd) return run_replay(replay_path);
        if (*validate_cmd) return run_validate(validate_args);
        if (*analyze_cmd) return run_analyze(analyze);
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kOk;
}
