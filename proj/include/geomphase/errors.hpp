#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace geomphase {

// Common base for all toolkit errors. code() is a stable machine-readable
// tag; reports use it when they record why a grid point was skipped.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what_arg)
        : std::runtime_error(what_arg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define GEOMPHASE_ERROR_TYPE(Name)                                             \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what_arg) : Error(#Name, what_arg) {} \
    }

GEOMPHASE_ERROR_TYPE(InvalidState);      // unusable quantum state (zero norm)
GEOMPHASE_ERROR_TYPE(InvalidConfig);     // parameter outside its domain
GEOMPHASE_ERROR_TYPE(UndefinedPhase);    // (near-)orthogonal beams carry no relative phase
GEOMPHASE_ERROR_TYPE(AmbiguousGeodesic); // antipodal endpoints, no unique minor arc
GEOMPHASE_ERROR_TYPE(OpenPath);          // solid angle needs a closed circuit
GEOMPHASE_ERROR_TYPE(Undersampled);      // adjacent path samples too far apart
GEOMPHASE_ERROR_TYPE(FitFailure);        // degenerate least-squares system
GEOMPHASE_ERROR_TYPE(InternalError);     // broken invariant, e.g. non-finite output

#undef GEOMPHASE_ERROR_TYPE

}  // namespace geomphase
