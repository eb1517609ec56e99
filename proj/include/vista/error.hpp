#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vista {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A graph failed validation where a valid graph is a precondition.
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

// Text format problems. `line` is 1-based, 0 when not tied to a line.
class FormatError : public Error {
 public:
  enum class Kind {
    MalformedRow,
    DuplicateId,
    UnorderedEntries,
    UnknownIndex,
    MalformedTag,
    SpanNotOnToken,
    Unrepresentable,
    MalformedGraphFile,
  };

  FormatError(Kind kind, std::size_t line, const std::string& message)
      : Error(describe(kind, line, message)), kind_(kind), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

  static const char* kind_name(Kind k) noexcept {
    switch (k) {
      case Kind::MalformedRow: return "MalformedRow";
      case Kind::DuplicateId: return "DuplicateId";
      case Kind::UnorderedEntries: return "UnorderedEntries";
      case Kind::UnknownIndex: return "UnknownIndex";
      case Kind::MalformedTag: return "MalformedTag";
      case Kind::SpanNotOnToken: return "SpanNotOnToken";
      case Kind::Unrepresentable: return "Unrepresentable";
      case Kind::MalformedGraphFile: return "MalformedGraphFile";
    }
    return "FormatError";
  }

 private:
  static std::string describe(Kind k, std::size_t line, const std::string& msg) {
    std::string out = kind_name(k);
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    if (!msg.empty()) out += ": " + msg;
    return out;
  }

  Kind kind_;
  std::size_t line_;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Dataset layout problems.
class DatasetError : public Error {
 public:
  enum class Kind { MissingSplit, InvalidGoldGraph, Io };

  DatasetError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace vista
