#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cswseg
{

  // Process exit codes shared by every CLI subcommand.
  enum class ExitCode : int
  {
    Success = 0,
    Validation = 1,
    Argument = 2,
    Io = 3,
  };

  class Error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
    virtual ExitCode exit_code() const noexcept = 0;
  };

  // Malformed input: bad file layout, missing columns, invalid UTF-8, bad checksum.
  class FormatError : public Error
  {
  public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::Validation; }
  };

  // Well-formed input that violates a domain invariant.
  class ValidationError : public Error
  {
  public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::Validation; }
  };

  class ArgumentError : public Error
  {
  public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::Argument; }
  };

  class IoError : public Error
  {
  public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::Io; }
  };

  class DecodeError : public FormatError
  {
  public:
    DecodeError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return _line; }

  private:
    std::size_t _line;
  };

  class ChecksumError : public FormatError
  {
  public:
    using FormatError::FormatError;
  };

  class ConfigError : public ValidationError
  {
  public:
    using ValidationError::ValidationError;
  };

  class AlignmentError : public ValidationError
  {
  public:
    using ValidationError::ValidationError;
  };

}
