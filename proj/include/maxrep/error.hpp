#pragma once

#include <stdexcept>
#include <string>

namespace maxrep {

enum class ErrorKind {
    // mathematical refusals
    NotSymplectic,
    NotTransverse,
    NotMaximal,
    NotValid,
    NotFixed,
    NotContracting,
    NotCompatible,
    NotSHyperbolic,
    NoCanonicalFixedPoint,
    CannotGlue,
    GraphInvalid,
    InvalidArgument,
    // numerical breakdown
    NearSingular,
    NearSingularDet,
    Singular,
    NotInvertible,
    IllConditioned,
    ResonantSpectrum,
    DefectiveSplit,
    // input format
    Parse,
};

const char* kind_name(ErrorKind k);

// 2 parse, 3 mathematical refusal, 4 numerical breakdown
int exit_code_for(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

}  // namespace maxrep
