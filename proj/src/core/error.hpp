#pragma once

#include <stdexcept>
#include <string>

namespace s2s {

enum class ErrorKind {
  invalid_input,  // violated precondition or bad argument
  parse,          // malformed file content
  io,             // filesystem or codec failure
  external_tool,  // subprocess failure
  runtime,        // anything else (non-finite loss, config mismatch, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
  throw Error(ErrorKind::invalid_input, msg);
}
[[noreturn]] inline void throw_parse(const std::string& msg) {
  throw Error(ErrorKind::parse, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
  throw Error(ErrorKind::io, msg);
}
[[noreturn]] inline void throw_external(const std::string& msg) {
  throw Error(ErrorKind::external_tool, msg);
}
[[noreturn]] inline void throw_runtime(const std::string& msg) {
  throw Error(ErrorKind::runtime, msg);
}

}  // namespace s2s
