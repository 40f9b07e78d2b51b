#pragma once

#include <stdexcept>
#include <string>

namespace stackelkep {

enum class ErrorKind {
    Parse,       // malformed input text
    Validation,  // well-formed input violating an invariant or precondition
    CapExceeded, // a resource guard refused an exponential search
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline Error parse_error(const std::string& what) { return {ErrorKind::Parse, what}; }
inline Error validation_error(const std::string& what) { return {ErrorKind::Validation, what}; }
inline Error cap_error(const std::string& what) { return {ErrorKind::CapExceeded, what}; }

} // namespace stackelkep
