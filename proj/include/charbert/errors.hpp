#pragma once

#include <stdexcept>
#include <string>

namespace charbert {

// Every failure the library reports derives from Error so callers can catch
// one type; the subclasses let the CLI map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CHARBERT_ERROR(Name)                 \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

CHARBERT_ERROR(DomainMismatch);
CHARBERT_ERROR(ParseError);
CHARBERT_ERROR(InvalidPrime);
CHARBERT_ERROR(InvalidWitness);
CHARBERT_ERROR(WitnessInsufficient);
CHARBERT_ERROR(ZeroIdeal);
CHARBERT_ERROR(InfiniteValuation);
CHARBERT_ERROR(NonTorsion);
CHARBERT_ERROR(UnsupportedRepresentation);
CHARBERT_ERROR(MissingPrime);
CHARBERT_ERROR(InternalConsistency);
CHARBERT_ERROR(ConditionViolation);
CHARBERT_ERROR(PreconditionError);

// Resource limits are kept apart: the CLI reports them with their own exit code.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

#undef CHARBERT_ERROR

}  // namespace charbert
