#pragma once

#include <stdexcept>
#include <string>

namespace majorana {

/// Argument outside the mathematical domain of an operation (bad spin
/// projection, ladder leaving the multiplet, p out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Rejected input configuration. Carries the offending key when known.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what, std::string key = {})
        : std::invalid_argument(what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Integer-spin formula requested for a half-integer spin or vice versa.
class DispatchError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The bisector frame is undefined where the field magnitude vanishes.
class SingularFrameError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A brute-force check could not produce a trustworthy number.
class OracleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace majorana
