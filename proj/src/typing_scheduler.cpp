#include "typebot/typing_scheduler.hpp"

#include "typebot/errors.hpp"
#include "typebot/utf8.hpp"

#include <algorithm>
#include <cmath>

namespace typebot {

const char* to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::TypeChar: return "type_char";
    case EventKind::DeleteBackward: return "delete_backward";
    case EventKind::MoveCursorTo: return "move_cursor";
    case EventKind::Pause: return "pause";
    }
    return "?";
}

const char* to_string(GapKind kind)
{
    switch (kind) {
    case GapKind::Char: return "char";
    case GapKind::Word: return "word";
    case GapKind::Delete: return "delete";
    case GapKind::Cursor: return "cursor";
    case GapKind::Think: return "think";
    }
    return "?";
}

double sample_delay(const Pace& pace, Rng& rng)
{
    if (pace.stddev <= 0.0) return std::max(pace.mean, 0.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double x = rng.normal(pace.mean, pace.stddev);
        if (x >= 0.0) return x;
    }
    return 0.0;
}

namespace {

constexpr std::uint64_t kRetimeSalt = 0x7E71AE;

std::int64_t to_ms(double value)
{
    return static_cast<std::int64_t>(std::llround(value));
}

class Emitter {
public:
    Emitter(const TemporalParameters& temporal, Rng& rng, std::vector<KeystrokeEvent>& out)
        : temporal_(temporal), rng_(rng), out_(out)
    {
    }

    void set_clock(std::int64_t t) { t_ = t; }

    void type(char32_t ch, bool word_start, std::size_t caret_after)
    {
        std::int64_t gap;
        if (word_start) {
            maybe_pause(caret_after - 1);
            gap = to_ms(sample_delay(temporal_.character_typing, rng_) + sample_delay(temporal_.space_lag, rng_));
        } else {
            gap = to_ms(sample_delay(temporal_.character_typing, rng_));
        }
        KeystrokeEvent e;
        e.kind = EventKind::TypeChar;
        e.ch = ch;
        e.caret = caret_after;
        e.gap = word_start ? GapKind::Word : GapKind::Char;
        push(e, gap);
    }

    void backspace(std::size_t caret_after)
    {
        KeystrokeEvent e;
        e.kind = EventKind::DeleteBackward;
        e.caret = caret_after;
        e.gap = GapKind::Delete;
        push(e, to_ms(sample_delay(temporal_.character_deletion, rng_)));
    }

    void move(std::size_t from, std::size_t to)
    {
        if (from == to) return;
        const auto distance = static_cast<double>(from > to ? from - to : to - from);
        KeystrokeEvent e;
        e.kind = EventKind::MoveCursorTo;
        e.target = to;
        e.caret = to;
        e.gap = GapKind::Cursor;
        push(e, to_ms(distance * sample_delay(temporal_.cursor_move, rng_)));
    }

    void maybe_pause(std::size_t caret)
    {
        if (!rng_.bernoulli(temporal_.pause_rate)) return;
        KeystrokeEvent e;
        e.kind = EventKind::Pause;
        e.duration_ms = to_ms(1000.0 * sample_delay(temporal_.thinking_time, rng_));
        e.caret = caret;
        e.gap = GapKind::Think;
        push(e, e.duration_ms);
    }

    void push(KeystrokeEvent e, std::int64_t gap)
    {
        t_ += gap;
        e.t_ms = t_;
        out_.push_back(e);
    }

private:
    const TemporalParameters& temporal_;
    Rng& rng_;
    std::vector<KeystrokeEvent>& out_;
    std::int64_t t_ = 0;
};

} // namespace

EventTrace schedule(const EditPlan& plan, const TemporalParameters& temporal, std::uint64_t seed)
{
    ensure_valid(temporal);

    EventTrace trace;
    trace.seed = seed;
    trace.temporal = temporal;
    trace.editing = plan.params;
    trace.initial_text = plan.initial_text;
    trace.final_text = plan.final_text;
    trace.stats = plan.stats;

    const std::u32string typed = utf8::decode(plan.initial_text);
    const std::string_view final_text = plan.final_text;

    struct Pending {
        std::size_t begin;   // detour start in initial scalars
        std::u32string detour;
        std::u32string replacement;
        std::size_t anchor;
    };
    std::vector<Pending> pending;
    pending.reserve(plan.actions.size());
    for (std::size_t i = 0; i < plan.actions.size(); ++i) {
        const auto& a = plan.actions[i];
        if (a.initial_region.end > plan.initial_text.size() || a.region.end > final_text.size()) {
            throw PlanIntegrityError("action " + std::to_string(i) + " points outside the text");
        }
        Pending p{utf8::scalar_index(plan.initial_text, a.initial_region.begin), utf8::decode(a.detour),
                  utf8::decode(a.region.view(final_text)), a.trigger.anchor};
        if (p.anchor > typed.size() || p.anchor < p.begin + p.detour.size()) {
            throw PlanIntegrityError("action " + std::to_string(i) + " anchor " + std::to_string(p.anchor) +
                                     " outside the typing order");
        }
        if (i > 0 && pending.back().anchor > p.anchor) throw PlanIntegrityError("actions are not ordered by anchor");
        pending.push_back(std::move(p));
    }

    Rng rng(seed);
    Emitter emit(temporal, rng, trace.events);

    struct Resolved {
        std::size_t begin;
        std::ptrdiff_t delta;
    };
    std::vector<Resolved> resolved;
    std::size_t buffer_length = 0;
    std::size_t next = 0;

    auto resolve = [&](const Pending& p) {
        std::ptrdiff_t shift = 0;
        for (const auto& r : resolved) {
            if (r.begin < p.begin) shift += r.delta;
        }
        const auto start = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p.begin) + shift);
        std::size_t keep = 0;
        while (keep < p.detour.size() && keep < p.replacement.size() && p.detour[keep] == p.replacement[keep]) ++keep;

        const std::size_t end = buffer_length;
        std::size_t caret = start + p.detour.size();
        emit.move(end, caret);
        for (std::size_t k = keep; k < p.detour.size(); ++k) {
            --caret;
            --buffer_length;
            emit.backspace(caret);
        }
        for (std::size_t k = keep; k < p.replacement.size(); ++k) {
            ++caret;
            ++buffer_length;
            emit.type(p.replacement[k], false, caret);
        }
        emit.move(caret, buffer_length);
        resolved.push_back({p.begin, static_cast<std::ptrdiff_t>(p.replacement.size()) -
                                         static_cast<std::ptrdiff_t>(p.detour.size())});
    };

    while (next < pending.size() && pending[next].anchor == 0) resolve(pending[next++]);
    for (std::size_t i = 0; i < typed.size(); ++i) {
        const bool word_start = !utf8::is_space(typed[i]) && (i == 0 || utf8::is_space(typed[i - 1]));
        ++buffer_length;
        emit.type(typed[i], word_start, buffer_length);
        while (next < pending.size() && pending[next].anchor == i + 1) resolve(pending[next++]);
    }
    if (next != pending.size()) throw PlanIntegrityError("unresolved action after typing finished");
    return trace;
}

EventTrace retime(const EventTrace& trace, std::size_t from, const TemporalParameters& temporal)
{
    ensure_valid(temporal);
    from = std::min(from, trace.events.size());

    EventTrace out = trace;
    out.temporal = temporal;
    out.events.assign(trace.events.begin(), trace.events.begin() + static_cast<std::ptrdiff_t>(from));

    Rng rng(derive_seed(trace.seed, derive_seed(kRetimeSalt, from)));
    Emitter emit(temporal, rng, out.events);
    emit.set_clock(from == 0 ? 0 : trace.events[from - 1].t_ms);

    std::size_t caret = from == 0 ? 0 : trace.events[from - 1].caret;
    for (std::size_t i = from; i < trace.events.size(); ++i) {
        const auto& e = trace.events[i];
        switch (e.kind) {
        case EventKind::Pause:
            break;
        case EventKind::TypeChar:
            emit.type(e.ch, e.gap == GapKind::Word, e.caret);
            break;
        case EventKind::DeleteBackward:
            emit.backspace(e.caret);
            break;
        case EventKind::MoveCursorTo:
            emit.move(caret, e.target);
            break;
        }
        caret = e.caret;
    }
    return out;
}

std::string apply_trace(const std::vector<KeystrokeEvent>& events)
{
    std::u32string buffer;
    std::size_t caret = 0;
    std::int64_t last_t = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (e.t_ms < last_t) throw ReplayError(i, "timestamp goes backwards");
        last_t = e.t_ms;
        switch (e.kind) {
        case EventKind::TypeChar:
            buffer.insert(buffer.begin() + static_cast<std::ptrdiff_t>(caret), e.ch);
            ++caret;
            break;
        case EventKind::DeleteBackward:
            if (caret == 0) throw ReplayError(i, "delete_backward at offset 0");
            buffer.erase(buffer.begin() + static_cast<std::ptrdiff_t>(caret) - 1);
            --caret;
            break;
        case EventKind::MoveCursorTo:
            if (e.target > buffer.size()) {
                throw ReplayError(i, "cursor target " + std::to_string(e.target) + " beyond buffer length " +
                                         std::to_string(buffer.size()));
            }
            caret = e.target;
            break;
        case EventKind::Pause:
            break;
        }
        if (e.caret != caret) {
            throw ReplayError(i, "recorded caret " + std::to_string(e.caret) + " but replay caret is " +
                                     std::to_string(caret));
        }
    }
    return utf8::encode(buffer);
}

} // namespace typebot
