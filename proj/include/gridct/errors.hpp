#pragma once

#include <stdexcept>
#include <string>

namespace gridct {

// Malformed inputs and violated operation preconditions.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable files and format violations.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive search was stopped by its enumeration cap.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// A solver exceeded its wall-clock limit.
struct timeout_error : std::runtime_error {
    explicit timeout_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gridct
