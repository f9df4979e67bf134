#pragma once

#include <stdexcept>
#include <string>

namespace githeight {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input text did not parse; `field` names the offending location
/// (e.g. "points[2].vector[0]").
struct ParseError : Error {
    std::string field;
    ParseError(const std::string& field_, const std::string& what)
        : Error("parse error at " + field_ + ": " + what), field(field_) {}
};

/// Too many distinct directions for exact subset-span enumeration.
struct EnumerationLimitError : Error {
    explicit EnumerationLimitError(const std::string& what) : Error(what) {}
};

} // namespace githeight
