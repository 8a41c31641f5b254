#ifndef DYADIC_ERROR_HPP
#define DYADIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dyadic {

// Error taxonomy shared by the C++ core and the C API status codes.
enum class ErrorCode {
    invalid_argument = 1,
    unsupported_order,   // filter order outside the tabulated range
    construction,        // refinement eigen-solve failed to converge
    resolution,          // requested level/depth finer than the data
    alignment,           // domain endpoints off the required dyadic lattice
    range,               // interval or translate leaves the domain
    index,               // multiplier/coefficient index out of bounds
    insufficient_data,   // not enough usable rows for a fit
    config,              // malformed experiment configuration
    io,                  // file read/write or parse failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace dyadic

#endif
