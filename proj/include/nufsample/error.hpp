#pragma once

#include <stdexcept>
#include <string>

namespace nufs {

// Numeric values double as CLI exit codes and C API status codes.
enum class ErrorKind : int
{
  Validation = 2,
  Resource = 3,
  Numerical = 4,
  Io = 5,
};

class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, std::string const &what)
    : std::runtime_error(what)
    , kind_(kind)
  {
  }

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(std::string const &what) { throw Error(ErrorKind::Validation, what); }

inline void require(bool cond, std::string const &what)
{
  if (!cond) { fail(what); }
}

} // namespace nufs
