#pragma once

#include <stdexcept>
#include <string>

namespace scargeo {

/// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define SCARGEO_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                          \
   public:                                                             \
    using Error::Error;                                                \
    const char* kind() const noexcept override { return #Name; }       \
  }

SCARGEO_DEFINE_ERROR(IndexError);
SCARGEO_DEFINE_ERROR(ShapeError);
SCARGEO_DEFINE_ERROR(ParameterError);
SCARGEO_DEFINE_ERROR(EmptyForegroundError);
SCARGEO_DEFINE_ERROR(DegenerateMaskError);
SCARGEO_DEFINE_ERROR(OracleSizeError);
SCARGEO_DEFINE_ERROR(EmptyRoiError);
SCARGEO_DEFINE_ERROR(EmptyMaskError);
SCARGEO_DEFINE_ERROR(SpecError);
SCARGEO_DEFINE_ERROR(InsufficientVoxelsError);
SCARGEO_DEFINE_ERROR(FormatError);
SCARGEO_DEFINE_ERROR(NonBinaryMaskError);

#undef SCARGEO_DEFINE_ERROR

}  // namespace scargeo
