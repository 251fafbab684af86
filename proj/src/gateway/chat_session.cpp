#include "typebot/gateway/chat_session.hpp"

#include "typebot/errors.hpp"
#include "typebot/random.hpp"

#include <limits>

namespace typebot::gateway {

namespace {

constexpr std::uint64_t kWaitingSalt = 0x3A17;

template <typename Message>
void send(std::vector<std::string>& out, Message m)
{
    out.push_back(frame(ServerMessage{std::move(m)}));
}

} // namespace

std::int64_t waiting_room_delay(std::uint64_t seed, std::int64_t min_ms, std::int64_t max_ms)
{
    if (max_ms <= min_ms) return std::max<std::int64_t>(min_ms, 0);
    Rng rng(derive_seed(seed, kWaitingSalt));
    return rng.between(min_ms, max_ms);
}

ChatSession::ChatSession(ChatSessionOptions options, std::string session_id, std::uint64_t seed)
    : options_(std::move(options)), session_id_(std::move(session_id)), seed_(seed)
{
    if (!options_.lexicon) options_.lexicon = Lexicon::bundled();
}

std::vector<std::string> ChatSession::on_client(std::string_view line, std::int64_t now_ms)
{
    std::vector<std::string> out;
    if (state_ == State::Closed) return out;
    ClientMessage message;
    try {
        message = parse_client_message(line);
    } catch (const ProtocolError& e) {
        send(out, Notice{"protocol-error", e.what()});
        return out;
    }
    std::visit([&](const auto& m) { handle(m, now_ms, out); }, message);
    step(now_ms, out);
    return out;
}

void ChatSession::handle(const OpenSession& m, std::int64_t now_ms, std::vector<std::string>& out)
{
    if (state_ != State::AwaitingOpen) {
        send(out, Notice{"protocol-error", "session already open"});
        return;
    }
    AgentConfig config;
    try {
        if (m.config) {
            auto j = *m.config;
            Preset fallback = options_.defaults.preset;
            if (m.preset) {
                auto p = preset_from_string(*m.preset);
                if (!p) throw ValidationError("unknown preset '" + *m.preset + "'");
                if (!j.contains("preset")) j["preset"] = *m.preset;
                fallback = *p;
            }
            if (!j.contains("backend")) j["backend"] = to_json(options_.defaults.backend);
            if (!j.contains("constraints")) j["constraints"] = to_json(options_.defaults.constraints);
            config = agent_config_from_json(j, fallback);
        } else {
            Preset p = options_.defaults.preset;
            if (m.preset) {
                auto named = preset_from_string(*m.preset);
                if (!named) throw ValidationError("unknown preset '" + *m.preset + "'");
                p = *named;
            }
            config = p == options_.defaults.preset ? options_.defaults : preset_config(p);
            config.backend = options_.defaults.backend;
            config.constraints = options_.defaults.constraints;
            validate(config);
        }
        if (m.seed) seed_ = *m.seed;
        auto backend = options_.backend_factory ? options_.backend_factory(config.backend) : make_backend(config.backend);
        agent_ = std::make_unique<AgentSession>(session_id_, std::move(config), seed_, options_.lexicon,
                                                std::move(backend));
    } catch (const ValidationError& e) {
        send(out, Notice{"validation-error", e.what()});
        return;
    }

    const auto delay = waiting_room_delay(seed_, options_.waiting_min_ms, options_.waiting_max_ms);
    send(out, WaitingRoom{delay});
    ready_at_ms_ = now_ms + delay;
    state_ = State::Waiting;
}

void ChatSession::handle(const UserMessage& m, std::int64_t now_ms, std::vector<std::string>& out)
{
    if (state_ != State::Ready) {
        send(out, Notice{"not-ready", "no partner connected yet"});
        return;
    }
    if (m.text.empty()) {
        send(out, Notice{"validation-error", "message text must not be empty"});
        return;
    }
    queue_.push_back({m.text, now_ms});
}

void ChatSession::handle(const UpdateParams& m, std::int64_t, std::vector<std::string>& out)
{
    if (!agent_) {
        send(out, Notice{"not-ready", "no session open"});
        return;
    }
    try {
        agent_->update_params(m.patch);
        send(out, Notice{"params-applied", "ok"});
    } catch (const ValidationError& e) {
        send(out, Notice{"validation-error", e.what()});
    }
}

void ChatSession::handle(const SetVisibility& m, std::int64_t, std::vector<std::string>&)
{
    show_typing_ = m.show_typing;
}

std::vector<std::string> ChatSession::poll(std::int64_t now_ms)
{
    std::vector<std::string> out;
    step(now_ms, out);
    return out;
}

void ChatSession::step(std::int64_t now_ms, std::vector<std::string>& out)
{
    for (;;) {
        if (state_ == State::Waiting) {
            if (now_ms < ready_at_ms_) return;
            send(out, SessionReady{session_id_});
            state_ = State::Ready;
        }
        if (state_ != State::Ready) return;

        if (streaming_) {
            auto& s = *streaming_;
            if (s.visible) {
                while (auto e = agent_->peek_event()) {
                    if (s.start_ms + e->t_ms > now_ms) return;
                    agent_->take_event();
                    send(out, EventMessage{s.message_id, *e});
                }
            } else {
                const auto trace = agent_->in_flight();
                const std::int64_t done_at = s.start_ms + (trace ? trace->duration_ms() : 0);
                if (done_at > now_ms) return;
                send(out, FinalText{s.message_id, s.final_text});
            }
            const auto trace = agent_->in_flight();
            const std::int64_t finished_at = s.start_ms + (trace ? trace->duration_ms() : 0);
            send(out, TraceDone{s.message_id});
            agent_->finish(finished_at);
            streaming_.reset();
            persist(now_ms, out);
            continue;
        }

        if (queue_.empty()) return;
        const auto next = std::move(queue_.front());
        queue_.pop_front();
        try {
            auto reply = agent_->respond(next.text, next.sent_at_ms, now_ms);
            streaming_ = Streaming{reply.index, now_ms, show_typing_, reply.trace.final_text};
        } catch (const BackendUnavailable& e) {
            send(out, Notice{"backend-unavailable", e.what()});
        }
        persist(now_ms, out);
    }
}

std::optional<std::int64_t> ChatSession::next_deadline() const
{
    switch (state_) {
    case State::Waiting: return ready_at_ms_;
    case State::Ready: break;
    default: return std::nullopt;
    }
    if (streaming_) {
        if (streaming_->visible) {
            if (auto e = agent_->peek_event()) return streaming_->start_ms + e->t_ms;
            return streaming_->start_ms; // only TraceDone left
        }
        const auto trace = agent_->in_flight();
        return streaming_->start_ms + (trace ? trace->duration_ms() : 0);
    }
    if (!queue_.empty()) return std::numeric_limits<std::int64_t>::min();
    return std::nullopt;
}

std::vector<std::string> ChatSession::close(std::int64_t now_ms)
{
    std::vector<std::string> out;
    if (state_ == State::Closed) return out;
    const bool opened = agent_ != nullptr;
    if (opened) {
        if (streaming_) {
            agent_->finish(now_ms, MessageStatus::Interrupted);
            streaming_.reset();
        }
        for (const auto& q : queue_) agent_->record_unanswered(q.text, q.sent_at_ms, now_ms);
        queue_.clear();
        persist(now_ms, out);
        if (options_.sink) {
            try {
                options_.sink->append(summarize(agent_->transcript()), now_ms);
            } catch (const PersistenceError& e) {
                send(out, Notice{"persistence-error", e.what()});
            }
        }
    }
    state_ = State::Closed;
    return out;
}

void ChatSession::persist(std::int64_t now_ms, std::vector<std::string>& out)
{
    if (!agent_) return;
    auto records = agent_->take_unpersisted();
    if (!options_.sink || records.empty()) return;
    try {
        options_.sink->append(records, now_ms);
    } catch (const PersistenceError& e) {
        send(out, Notice{"persistence-error", e.what()});
    }
}

} // namespace typebot::gateway
