#pragma once

#include <stdexcept>
#include <string>

namespace wocce {

enum class ErrorCode {
  Parse = 1,
  Size,
  Config,
  Domain,
  DegenerateFit,
  NoWiseCrowd,
  Internal,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

class SizeError : public Error {
 public:
  explicit SizeError(const std::string& what) : Error(ErrorCode::Size, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::Config, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class DegenerateFitError : public Error {
 public:
  explicit DegenerateFitError(const std::string& what)
      : Error(ErrorCode::DegenerateFit, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

}  // namespace wocce
