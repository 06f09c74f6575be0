#ifndef SUBMATROID_ERRORS_HPP_
#define SUBMATROID_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace submatroid {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments, malformed files, or violated call preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

/// An enumeration or table exceeded a configured resource cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

} // namespace submatroid

#endif
