#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace shubin {

// Library errors carry a stable machine-readable code ("NotElliptic", "JetExhausted", ...)
// that the CLI serializes into result files.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, const std::string& code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace shubin
