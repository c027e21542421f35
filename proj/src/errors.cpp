#include "cswseg/errors.hpp"

namespace cswseg
{

  DecodeError::DecodeError(std::size_t line, const std::string& what)
    : FormatError("line " + std::to_string(line) + ": " + what)
    , _line(line)
  {
  }

}
