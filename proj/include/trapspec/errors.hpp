#pragma once

#include <stdexcept>
#include <string>

namespace trapspec {

// Invalid quantum numbers, polynomial orders, or out-of-range arguments.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed or inconsistent configuration input (bad JSON, missing field, wrong unit).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A config key carries the right quantity with the wrong unit suffix.
class UnitMismatchError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// A physical precondition fails: untrappable sign, unstable Penning trap, no confinement.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Field evaluated on (or too close to) a conductor.
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical oracle could not deliver a result at the requested accuracy.
class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SearchFailure : public OracleError {
public:
    using OracleError::OracleError;
};

class IterationLimit : public OracleError {
public:
    using OracleError::OracleError;
};

class AccuracyError : public OracleError {
public:
    using OracleError::OracleError;
};

}  // namespace trapspec
