#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sattl {

// Base for every recoverable failure raised by the library. `kind()` is a
// stable identifier used by the CLI for machine-parsable error lines.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail);
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

#define SATTL_DEFINE_ERROR(Name)                                            \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(#Name, what) {}          \
  };

SATTL_DEFINE_ERROR(ReservedNameError)
SATTL_DEFINE_ERROR(TraceTooLong)
SATTL_DEFINE_ERROR(TraceFormatError)
SATTL_DEFINE_ERROR(SizeGuardError)
SATTL_DEFINE_ERROR(StateDone)
SATTL_DEFINE_ERROR(UnplaceableError)
SATTL_DEFINE_ERROR(EpisodeDone)
SATTL_DEFINE_ERROR(SplitTooSmall)
SATTL_DEFINE_ERROR(DimensionMismatch)
SATTL_DEFINE_ERROR(Unreachable)
SATTL_DEFINE_ERROR(ConfigError)

#undef SATTL_DEFINE_ERROR

}  // namespace sattl
