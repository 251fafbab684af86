#include "typebot/agent_session.hpp"

#include "typebot/edit_planner.hpp"
#include "typebot/prompt.hpp"
#include "typebot/random.hpp"
#include "typebot/segmenter.hpp"

namespace typebot {

namespace {

constexpr std::uint64_t kPlanSalt = 0x91A7;
constexpr std::uint64_t kScheduleSalt = 0x5C4E;

} // namespace

EventTrace make_trace(const std::string& text, const TemporalParameters& temporal, const EditingParameters& editing,
                      const Lexicon& lexicon, std::uint64_t seed)
{
    const auto plan = plan_edits(segment(text), editing, lexicon, derive_seed(seed, kPlanSalt));
    auto trace = schedule(plan, temporal, derive_seed(seed, kScheduleSalt));
    trace.seed = seed;
    return trace;
}

AgentSession::AgentSession(std::string id, AgentConfig config, std::uint64_t seed,
                           std::shared_ptr<const Lexicon> lexicon, std::unique_ptr<ResponseBackend> backend)
    : id_(std::move(id)),
      seed_(seed),
      lexicon_(lexicon ? std::move(lexicon) : Lexicon::bundled()),
      backend_(backend ? std::move(backend) : make_backend(config.backend)),
      config_(std::move(config))
{
    validate(config_);
    log_.session_id = id_;
    log_.preset = to_string(config_.preset);
}

AgentConfig AgentSession::config() const
{
    std::lock_guard lock(mutex_);
    return config_;
}

AgentReply AgentSession::respond(const std::string& user_message, std::int64_t now_ms)
{
    return respond(user_message, now_ms, now_ms);
}

AgentReply AgentSession::respond(const std::string& user_message, std::int64_t sent_at_ms, std::int64_t now_ms)
{
    std::unique_lock lock(mutex_);
    const std::size_t index = next_index_++;
    const auto preset = to_string(config_.preset);
    log_.messages.push_back(make_message(id_, preset, index, Sender::User, user_message, sent_at_ms, sent_at_ms));

    AgentReply reply;
    reply.index = index;
    reply.prompt = build_prompt(user_message, config_.constraints);

    // The backend may block for seconds; parameter updates stay possible meanwhile.
    lock.unlock();
    std::optional<std::string> text;
    try {
        text = backend_->reply({user_message, reply.prompt, index});
    } catch (const BackendUnavailable&) {
        lock.lock();
        log_.messages.push_back(
            make_message(id_, preset, index, Sender::Agent, "", now_ms, now_ms, MessageStatus::Interrupted));
        throw;
    }
    lock.lock();

    reply.text = std::move(*text);
    reply.trace = make_trace(reply.text, config_.temporal, config_.editing, *lexicon_, derive_seed(seed_, index));
    trace_ = reply.trace;
    emitted_ = 0;
    reply_started_ms_ = now_ms;
    reply_index_ = index;
    return reply;
}

bool AgentSession::has_in_flight() const
{
    std::lock_guard lock(mutex_);
    return trace_.has_value();
}

std::optional<KeystrokeEvent> AgentSession::peek_event() const
{
    std::lock_guard lock(mutex_);
    if (!trace_ || emitted_ >= trace_->events.size()) return std::nullopt;
    return trace_->events[emitted_];
}

std::optional<KeystrokeEvent> AgentSession::take_event()
{
    std::lock_guard lock(mutex_);
    if (!trace_ || emitted_ >= trace_->events.size()) return std::nullopt;
    return trace_->events[emitted_++];
}

std::size_t AgentSession::emitted() const
{
    std::lock_guard lock(mutex_);
    return emitted_;
}

std::optional<EventTrace> AgentSession::in_flight() const
{
    std::lock_guard lock(mutex_);
    return trace_;
}

MessageRecord AgentSession::finish(std::int64_t now_ms, MessageStatus status)
{
    std::lock_guard lock(mutex_);
    std::string text;
    if (trace_) {
        if (status == MessageStatus::Complete) {
            text = trace_->final_text;
        } else {
            const std::vector<KeystrokeEvent> shown(trace_->events.begin(),
                                                    trace_->events.begin() + static_cast<std::ptrdiff_t>(emitted_));
            text = apply_trace(shown);
        }
    }
    auto record = make_message(id_, to_string(config_.preset), reply_index_, Sender::Agent, std::move(text),
                               reply_started_ms_, now_ms, status);
    log_.messages.push_back(record);
    trace_.reset();
    emitted_ = 0;
    return record;
}

AgentConfig AgentSession::update_params(const nlohmann::json& patch)
{
    std::lock_guard lock(mutex_);
    auto next = apply_param_patch(config_, patch);
    if (trace_ && next.temporal != config_.temporal) {
        auto retimed = retime(*trace_, emitted_, next.temporal);
        trace_ = std::move(retimed);
    }
    config_ = std::move(next);
    return config_;
}

void AgentSession::record_unanswered(const std::string& user_message, std::int64_t sent_at_ms, std::int64_t now_ms)
{
    std::lock_guard lock(mutex_);
    const std::size_t index = next_index_++;
    const auto preset = to_string(config_.preset);
    log_.messages.push_back(make_message(id_, preset, index, Sender::User, user_message, sent_at_ms, sent_at_ms));
    log_.messages.push_back(
        make_message(id_, preset, index, Sender::Agent, "", now_ms, now_ms, MessageStatus::Interrupted));
}

std::vector<MessageRecord> AgentSession::take_unpersisted()
{
    std::lock_guard lock(mutex_);
    std::vector<MessageRecord> out(log_.messages.begin() + static_cast<std::ptrdiff_t>(persisted_), log_.messages.end());
    persisted_ = log_.messages.size();
    return out;
}

ConversationLog AgentSession::transcript() const
{
    std::lock_guard lock(mutex_);
    auto copy = log_;
    copy.summary = summarize(copy);
    return copy;
}

} // namespace typebot
