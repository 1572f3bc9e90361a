#pragma once

#include <stdexcept>
#include <string>

namespace latdom {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace latdom
