#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bpsm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural failure in a feed file; carries the byte offset of the
/// offending construct.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : Error(what + " at byte offset " + std::to_string(byte_offset)),
          byte_offset_(byte_offset) {}

    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

class IngestError : public Error {
public:
    using Error::Error;
};

/// Corpus store I/O or malformed record (message names the line number).
class StoreError : public Error {
public:
    using Error::Error;
};

class LexiconError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace bpsm
