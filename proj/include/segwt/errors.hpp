#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace segwt {

// Root of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A query argument lies outside its domain (position, prefix length, symbol).
class RangeError : public Error {
public:
    using Error::Error;
};

// A select-style query asked for an occurrence that does not exist.
// `available()` is the number of occurrences that do exist.
class NotFoundError : public Error {
public:
    NotFoundError(const std::string& what, std::size_t available)
        : Error(what), available_(available) {}

    std::size_t available() const noexcept { return available_; }

private:
    std::size_t available_;
};

enum class ValidationKind {
    duplicate_x,
    duplicate_y,
    x_out_of_range,
    y_out_of_range,
    empty_segment,  // x_left >= x_right
    symbol_out_of_alphabet,
    not_permutation,
    bad_parameter,
};

const char* to_string(ValidationKind kind) noexcept;

// Input data violates a structural requirement. `coordinate()` names the
// offending value (an x, a y, a symbol, ...).
class ValidationError : public Error {
public:
    ValidationError(ValidationKind kind, std::size_t coordinate, const std::string& what)
        : Error(what), kind_(kind), coordinate_(coordinate) {}

    ValidationKind kind() const noexcept { return kind_; }
    std::size_t coordinate() const noexcept { return coordinate_; }

private:
    ValidationKind kind_;
    std::size_t coordinate_;
};

// Two raw coordinates collide under strict rank-space reduction.
class TieError : public Error {
public:
    TieError(char axis, double value, const std::string& what)
        : Error(what), axis_(axis), value_(value) {}

    char axis() const noexcept { return axis_; }
    double value() const noexcept { return value_; }

private:
    char axis_;
    double value_;
};

// Malformed text input. `line()` is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what) : Error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Request refused because it would be too expensive (e.g. enumeration size).
class LimitError : public Error {
public:
    using Error::Error;
};

// Corrupt or incompatible serialized data.
class FormatError : public Error {
public:
    using Error::Error;
};

// Coarse error classes used when comparing an index against the oracle.
enum class ErrorClass { none, range, not_found, other };

const char* to_string(ErrorClass c) noexcept;

template <class F>
ErrorClass classify(F&& f) {
    try {
        f();
    } catch (const RangeError&) {
        return ErrorClass::range;
    } catch (const NotFoundError&) {
        return ErrorClass::not_found;
    } catch (const Error&) {
        return ErrorClass::other;
    }
    return ErrorClass::none;
}

}  // namespace segwt
