#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace typebot {

// Parameter or configuration values outside their allowed domain.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A DocumentStructure whose spans do not describe its text.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An EditPlan that cannot be scheduled (anchor outside typing order, overlapping regions).
class PlanIntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Replaying a trace failed at `event_index`.
class ReplayError : public std::runtime_error {
public:
    ReplayError(std::size_t event_index, const std::string& what)
        : std::runtime_error("event " + std::to_string(event_index) + ": " + what), event_index_(event_index)
    {
    }

    std::size_t event_index() const { return event_index_; }

private:
    std::size_t event_index_;
};

class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace typebot
