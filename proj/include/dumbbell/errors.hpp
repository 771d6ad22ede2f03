#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dumbbell {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifier : public Error {
public:
    UnknownIdentifier(std::size_t offset, const std::string& name);

    std::size_t offset() const noexcept { return offset_; }
    const std::string& name() const noexcept { return name_; }

private:
    std::size_t offset_;
    std::string name_;
};

/// tan near a pole, division by zero, negative power of zero.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Full equations of motion evaluated where |cos(phi)| < 1e-12.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// The active block of M^-1(0) - M^-1(pT) is (numerically) singular.
class DegenerateMonodromy : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class SingularJacobian : public NoConvergence {
public:
    using NoConvergence::NoConvergence;
};

class StepSizeUnderflow : public Error {
public:
    using Error::Error;
};

/// Config file problems. line() is 0 for validation errors not tied to a line.
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, std::size_t line = 0, std::string key = {});

    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

} // namespace dumbbell
