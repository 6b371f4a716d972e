#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace strengthlab {

// Thrown when an operation would enumerate more candidates than the configured
// budget allows. This is an explicit refusal, not a "no result" verdict: the
// caller can retry with a larger budget.
class budget_exceeded_error : public std::runtime_error {
public:
    budget_exceeded_error(std::string what, std::string planned, std::uint64_t budget)
        : std::runtime_error(std::move(what)), planned_count(std::move(planned)), budget_limit(budget) {}

    std::string planned_count;  // decimal string (may exceed 64 bits)
    std::uint64_t budget_limit;
};

// Thrown by cocharacter_limit when some nonzero graded component of the input
// sits at negative weight, i.e. the limit at t -> 0 does not exist.
class negative_weight_error : public std::runtime_error {
public:
    negative_weight_error(std::string what, std::int64_t weight)
        : std::runtime_error(std::move(what)), offending_weight(weight) {}

    std::int64_t offending_weight;
};

// Thrown by the high-minrank extraction when the search exhausts. Carries a
// human-readable description of the refuting sub-span (the prefix span whose
// combinations all have too-small rank, which contradicts the codim+maxrank
// inequality the caller claimed).
class construction_failed_error : public std::runtime_error {
public:
    construction_failed_error(std::string what, std::string refutation)
        : std::runtime_error(std::move(what)), refuting_span(std::move(refutation)) {}

    std::string refuting_span;
};

// Failure of a multi-stage procedure, labelled with the stage that failed.
class stage_error : public std::runtime_error {
public:
    stage_error(std::string stage_, const std::string& what)
        : std::runtime_error("[" + stage_ + "] " + what), stage(std::move(stage_)) {}

    std::string stage;
};

}  // namespace strengthlab
