#ifndef SYZLAB_ERRORS_HPP
#define SYZLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace syzlab {

// Exit-code classes used by the CLI: config errors map to 2,
// unsupported-model errors to 3, verdict failures to 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSmoothError : UnsupportedError {
    using UnsupportedError::UnsupportedError;
};

struct NotSquarefreeError : UnsupportedError {
    using UnsupportedError::UnsupportedError;
};

struct BadCharacteristicError : UnsupportedError {
    using UnsupportedError::UnsupportedError;
};

struct WindowTooSmallError : UnsupportedError {
    using UnsupportedError::UnsupportedError;
};

struct SingularSupportError : UnsupportedError {
    using UnsupportedError::UnsupportedError;
};

struct ScanExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace syzlab

#endif
