#pragma once

#include <stdexcept>
#include <string>

namespace kns {

// Bad or inconsistent input data (CSV parse failures, label mismatches, ...).
struct data_error : std::runtime_error {
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested work exceeds a configured capacity bound.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kns
