#pragma once

#include <stdexcept>
#include <string>

namespace nfold {

// Exact arithmetic would wrap; the computation is aborted instead.
struct overflow_exception : std::runtime_error {
    explicit overflow_exception(const std::string& what) : std::runtime_error(what) {}
};

// A hard enumeration/volume budget was exceeded; the problem is intractable at this size.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or contract-violating input.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency check failed (a bug, not a user error).
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace nfold
