#pragma once

#include <stdexcept>
#include <string>

namespace backline {

// Error taxonomy mirrored by CLI exit codes: validation -> 1,
// missing input -> 2, numerical/degenerate -> 3.
class Error : public std::runtime_error {
public:
    enum class Category { validation = 1, missing_input = 2, numerical = 3 };

    Error(Category category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message)
        : Error(Category::validation, message) {}
};

class MissingInputError : public Error {
public:
    explicit MissingInputError(const std::string& message)
        : Error(Category::missing_input, message) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& message)
        : Error(Category::numerical, message) {}
};

class ConfigError : public ValidationError {
public:
    explicit ConfigError(const std::string& message) : ValidationError(message) {}
};

class CorruptInputError : public ValidationError {
public:
    explicit CorruptInputError(const std::string& message) : ValidationError(message) {}
};

class OrientationUnknownError : public ValidationError {
public:
    explicit OrientationUnknownError(const std::string& message) : ValidationError(message) {}
};

class DegenerateGeometryError : public NumericalError {
public:
    explicit DegenerateGeometryError(const std::string& message) : NumericalError(message) {}
};

class CannotSyncError : public NumericalError {
public:
    explicit CannotSyncError(const std::string& message) : NumericalError(message) {}
};

class InsufficientDefendersError : public NumericalError {
public:
    explicit InsufficientDefendersError(const std::string& message) : NumericalError(message) {}
};

class EmptySequenceError : public NumericalError {
public:
    explicit EmptySequenceError(const std::string& message) : NumericalError(message) {}
};

class ZeroVarianceError : public NumericalError {
public:
    explicit ZeroVarianceError(const std::string& message) : NumericalError(message) {}
};

class DegenerateDesignError : public NumericalError {
public:
    explicit DegenerateDesignError(const std::string& message) : NumericalError(message) {}
};

}  // namespace backline
