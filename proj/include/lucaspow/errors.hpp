#pragma once

#include <stdexcept>
#include <string>

namespace lucaspow {

// Raised when a certified decision (sign, floor, quotient, ...) cannot be
// made below the configured precision ceiling.  Callers must treat this as
// "undecidable here", never as a value.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Interval-domain violation: division by an interval containing zero,
// logarithm of a non-positive interval, and similar.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// No convergent within the retry budget certifies epsilon > 0 in the
// Baker-Davenport step.
class epsilon_error : public std::runtime_error {
public:
    explicit epsilon_error(const std::string& what) : std::runtime_error(what) {}
};

// A pipeline stage could not establish its contract; carries the stage name.
class stage_error : public std::runtime_error {
public:
    stage_error(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace lucaspow
