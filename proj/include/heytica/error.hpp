#pragma once

#include <stdexcept>
#include <string>

namespace heytica {

/// Base of every error raised by the library. `kind()` is a stable tag used
/// by the CLI for machine-readable error payloads.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HEYTICA_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  };

HEYTICA_DEFINE_ERROR(CycleError)
HEYTICA_DEFINE_ERROR(SizeError)
HEYTICA_DEFINE_ERROR(BadElement)
HEYTICA_DEFINE_ERROR(TargetMismatch)
HEYTICA_DEFINE_ERROR(NotSurjective)
HEYTICA_DEFINE_ERROR(NotPMorphism)
HEYTICA_DEFINE_ERROR(DegenerateError)
HEYTICA_DEFINE_ERROR(AxiomError)
HEYTICA_DEFINE_ERROR(UnboundVariable)
HEYTICA_DEFINE_ERROR(NoDual)
HEYTICA_DEFINE_ERROR(ZeroElement)
HEYTICA_DEFINE_ERROR(NotPrincipal)
HEYTICA_DEFINE_ERROR(NotForest)
HEYTICA_DEFINE_ERROR(IndependenceFailure)
HEYTICA_DEFINE_ERROR(ConstructionError)
HEYTICA_DEFINE_ERROR(InsufficientFamily)
HEYTICA_DEFINE_ERROR(NotExtension)
HEYTICA_DEFINE_ERROR(FormatError)
HEYTICA_DEFINE_ERROR(IOError)
HEYTICA_DEFINE_ERROR(ParseError)

#undef HEYTICA_DEFINE_ERROR

}  // namespace heytica
