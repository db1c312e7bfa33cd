#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tatsp {

// Malformed instance or solution text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line > 0 ? what + ", line " + std::to_string(line) : what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A tour or extension uses an arc the instance does not contain, or no tour exists.
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Input exceeds a size guard (Held-Karp, brute force, MIP model cap).
class CapabilityError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace tatsp
