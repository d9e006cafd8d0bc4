#ifndef CHP_ERRORS_HPP
#define CHP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chp {

// Invalid structural input: bad vertex ids, self-loops, malformed partitions,
// id collisions on composition, and the like.
class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured resource cap would be exceeded. Deliberately a distinct type:
// callers must be able to tell "refused" from "answer is no".
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, long long requested, long long limit)
        : std::runtime_error(what + " (requested " + std::to_string(requested) +
                             ", limit " + std::to_string(limit) + ")"),
          requested_(requested),
          limit_(limit) {}

    long long requested() const { return requested_; }
    long long limit() const { return limit_; }

private:
    long long requested_;
    long long limit_;
};

// Malformed serialized input, with the byte offset of the offending position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace chp

#endif
