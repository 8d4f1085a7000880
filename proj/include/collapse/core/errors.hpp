#pragma once

#include <stdexcept>
#include <string>

namespace collapse {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define COLLAPSE_ERROR(Name)                  \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    };

COLLAPSE_ERROR(InvalidArgument)
COLLAPSE_ERROR(InvalidState)
COLLAPSE_ERROR(FrameError)
COLLAPSE_ERROR(ContactError)
COLLAPSE_ERROR(PreconditionError)
COLLAPSE_ERROR(TripleCollisionError)
COLLAPSE_ERROR(GrazingError)
COLLAPSE_ERROR(FlightOverrunError)
COLLAPSE_ERROR(UndefinedParameterError)
COLLAPSE_ERROR(NoCollisionError)
COLLAPSE_ERROR(MapDomainError)
COLLAPSE_ERROR(NoConstructionError)
COLLAPSE_ERROR(UsageError)
COLLAPSE_ERROR(IoError)

#undef COLLAPSE_ERROR

}  // namespace collapse
