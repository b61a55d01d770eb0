#pragma once

#include <stdexcept>
#include <string>

namespace neuroevo {

/// Malformed input text (JSON syntax, truncated binary, bad field type).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error("parse error: " + msg) {}
};

/// Structurally valid input violating a documented invariant.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error("validation error: " + msg) {}
};

/// Filesystem failures (missing file, unwritable directory).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error("i/o error: " + msg) {}
};

}  // namespace neuroevo
