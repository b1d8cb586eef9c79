#ifndef SNTREE_ERROR_HPP
#define SNTREE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace snt {

// Malformed textual input. `offset` is the byte position the parser was
// looking at when it gave up.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset)
        : std::runtime_error(message + " (offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// A caller broke a documented precondition (bad argument, malformed
// structure, multiple roots, ...).
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& message) : std::runtime_error(message) {}
};

// A bounded operation refused to run because its enumeration guard would be
// exceeded. Distinct from ContractError so callers can report it separately.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace snt

#endif
