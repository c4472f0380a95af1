#ifndef PHASERANGE_ERRORS_HPP
#define PHASERANGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phaserange {

/// Malformed or out-of-contract caller input (bad wavelengths, wrong
/// vector lengths, unparsable text).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exact self-check failed. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

inline void ensure(bool ok, const std::string& what) {
    if (!ok) throw InternalError(what);
}

} // namespace detail
} // namespace phaserange

#endif
