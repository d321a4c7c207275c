#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surflap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SURFLAP_ERROR(Name)                  \
    class Name : public Error {              \
    public:                                  \
        using Error::Error;                  \
    }

SURFLAP_ERROR(DomainError);
SURFLAP_ERROR(UnboundVariable);
SURFLAP_ERROR(UnknownFunction);
SURFLAP_ERROR(StepUnderflow);
SURFLAP_ERROR(OutOfDomain);
SURFLAP_ERROR(TransversalityViolation);
SURFLAP_ERROR(DegenerateSpeed);
SURFLAP_ERROR(PoleDegeneracy);
SURFLAP_ERROR(RestrictionMismatch);
SURFLAP_ERROR(NoDivFreeExtension);
SURFLAP_ERROR(ContextViolation);
SURFLAP_ERROR(ConfigError);

#undef SURFLAP_ERROR

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace surflap
