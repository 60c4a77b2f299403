#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qepi {

// Base of every error raised by the library. Callers that only care about
// "the input was bad" catch this.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidAtom : Error {
  using Error::Error;
};

// Located parse failure. `offset` is 1-based; end of input is size() + 1.
struct SyntaxError : Error {
  SyntaxError(std::size_t offset, std::string message)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset),
        detail_(std::move(message)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

struct ModalOperatorPresent : Error {
  using Error::Error;
};
struct UnknownAtom : Error {
  using Error::Error;
};
struct AtomLimitExceeded : Error {
  using Error::Error;
};
struct InvalidModel : Error {
  using Error::Error;
};
struct KindMismatch : Error {
  using Error::Error;
};
struct DisjointIntervals : Error {
  using Error::Error;
};
struct DuplicateAtom : Error {
  using Error::Error;
};
struct InvalidInterval : Error {
  using Error::Error;
};

}  // namespace qepi
