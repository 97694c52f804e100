#ifndef WPCE_ERRORS_HPP
#define WPCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wpce {

/// Sizes of inputs do not agree (parameter counts, string lengths, node counts).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An encoding was asked for more variables than its Pauli strings can carry.
class CapacityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A problem instance violates its structural invariants.
class InstanceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exact oracle refused an instance that is too large to enumerate.
class RefusalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The objective returned NaN or infinity during optimization.
class NonFiniteObjective : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wpce

#endif // WPCE_ERRORS_HPP
