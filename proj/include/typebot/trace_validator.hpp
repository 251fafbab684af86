#pragma once

#include "typebot/typing_scheduler.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace typebot {

struct ValidationCheck {
    std::string name;
    bool passed = true;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::size_t samples = 0;
    std::string detail;
};

struct ValidationReport {
    std::size_t traces = 0;
    std::vector<ValidationCheck> checks;

    bool passed() const;
    nlohmann::ordered_json to_json() const;
};

// Mean and variance of a pace after truncation at zero and rounding to whole ms.
struct DelayMoments {
    double mean = 0.0;
    double variance = 0.0;
};
DelayMoments delay_moments(const Pace& pace, double scale = 1.0);

// Checks a batch of traces against the configuration they claim to follow:
// eventual text, monotone time, per-source delay mean and std (exact when the
// std is zero, 4-sigma bands otherwise), pause rate and drawn edit rates
// (3-sigma binomial bands).
ValidationReport validate_traces(const std::vector<EventTrace>& traces, const TemporalParameters& temporal,
                                 const EditingParameters& editing);

} // namespace typebot
