#ifndef OCTPLANE_ERROR_HPP
#define OCTPLANE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace octplane {

enum class Err {
  DivisionByZero,
  UnsupportedField,
  FieldMismatch,
  AlgebraMismatch,
  NormIsotropic,
  SingularFrame,
  OutsideDomain,
  ZeroElement,
  MembershipViolated,
  FrameMismatch,
  WrongType,
  IncompatibleField,
  WitnessFailure,
  OutsideSubspace,
  ConfigError,
  BadInput,
  Internal,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace octplane

#endif
