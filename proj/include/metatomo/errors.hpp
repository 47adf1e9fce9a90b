#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metatomo {

// Invalid inputs, files, or configurations. CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse failures carry file/field context in the message.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A guarded allocation would exceed the configured memory cap. CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t required_bytes)
      : std::runtime_error(what), required_bytes_(required_bytes) {}
  std::size_t required_bytes() const { return required_bytes_; }

 private:
  std::size_t required_bytes_;
};

}  // namespace metatomo
