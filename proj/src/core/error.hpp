#pragma once

#include <stdexcept>
#include <string>

namespace tfas {

enum class ErrorKind {
  parameter,   // bad arguments or a violated precondition
  structural,  // input lacks the structure a stage needs
  resource,    // exact/exhaustive budget exceeded
  parse,       // malformed serialized data
  io,          // filesystem failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace tfas
