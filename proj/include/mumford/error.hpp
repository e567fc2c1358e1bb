#pragma once

#include <stdexcept>
#include <string>

namespace mumford {

// Invalid mathematical input (bad parameters, malformed specs, singular
// matrices where regular ones are required, ...).  CLI maps this to exit 2.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or closure would exceed the configured element budget.
// Reported, never silently truncated.  CLI maps this to exit 2.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// An internal mathematical cross-check failed (e.g. the two branch-count
// formulas disagree).  CLI maps this to exit 1.
struct check_failed : std::runtime_error {
    explicit check_failed(const std::string& what) : std::runtime_error(what) {}
};

constexpr std::size_t kDefaultElementBudget = 2'000'000;

}  // namespace mumford
