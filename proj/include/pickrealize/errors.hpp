#pragma once

#include <stdexcept>
#include <string>

namespace pickrealize {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PICKREALIZE_ERROR(Name)             \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

PICKREALIZE_ERROR(ShapeMismatch);
PICKREALIZE_ERROR(DimensionMismatch);
PICKREALIZE_ERROR(PoleProximity);
PICKREALIZE_ERROR(DegreeTooLow);
PICKREALIZE_ERROR(DegenerateLift);
PICKREALIZE_ERROR(BlockNotFound);
PICKREALIZE_ERROR(NotHermitianStructure);
PICKREALIZE_ERROR(SolverStalled);
PICKREALIZE_ERROR(ResidualTooLarge);
PICKREALIZE_ERROR(InconsistentCase);
PICKREALIZE_ERROR(NonConstantTerminal);
PICKREALIZE_ERROR(SingularAtPoint);
PICKREALIZE_ERROR(InputError);

#undef PICKREALIZE_ERROR

}  // namespace pickrealize
