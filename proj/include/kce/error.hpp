#pragma once

#include <stdexcept>
#include <string>

namespace kce {

// Base type for everything thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad flags, unreadable paths, malformed config files. The CLI maps these to exit 2.
class config_error : public error {
public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Malformed or inconsistent content inside an otherwise readable input. Exit 1.
class data_error : public error {
public:
    explicit data_error(const std::string& msg) : error(msg) {}
};

} // namespace kce
