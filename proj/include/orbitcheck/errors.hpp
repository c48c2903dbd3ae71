#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitcheck {

/// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed numeric text (decimal or p/q fraction).
struct ParseError : Error {
    using Error::Error;
};

/// A parsed value lies outside its admissible range.
struct RangeError : Error {
    using Error::Error;
};

/// An argument violates a function precondition.
struct DomainError : Error {
    using Error::Error;
};

/// Two inputs that must describe the same run do not.
struct MismatchError : Error {
    using Error::Error;
};

/// A lower-bound-error computation was given the same extension twice.
struct SameFormError : Error {
    using Error::Error;
};

/// An invalid run configuration; `field` names the offending entry.
struct ConfigError : Error {
    std::string field;
    ConfigError(std::string field_name, const std::string& what)
        : Error("config field '" + field_name + "': " + what), field(std::move(field_name)) {}
};

/// A file could not be created or written; the message carries the path.
struct IoError : Error {
    using Error::Error;
};

/// An iterate escaped [0,1] beyond the rounding guard band. Reported with the
/// offending index instead of clamping: a silently repaired orbit would hide
/// exactly the class of artifact this library exists to detect.
struct RangeFault : Error {
    std::size_t index;
    double value;
    RangeFault(std::size_t n, double x)
        : Error("iterate " + std::to_string(n) + " left the unit interval: " + std::to_string(x)),
          index(n),
          value(x) {}
};

/// The exact orbit's denominator outgrew the configured digit budget.
/// `last_index` is the last iterate that was completed within budget.
struct BudgetError : Error {
    std::size_t last_index;
    BudgetError(std::size_t completed, std::size_t budget_digits)
        : Error("exact orbit denominator exceeds " + std::to_string(budget_digits) +
                " decimal digits after index " + std::to_string(completed)),
          last_index(completed) {}
};

}  // namespace orbitcheck
