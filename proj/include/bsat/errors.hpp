#pragma once

#include <stdexcept>
#include <string>

namespace bsat {

/// Operands live in different ambient rings, or a matrix is ragged.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its mathematical domain
/// (non-generic arrangement, unsupported degree, dependent frame, ...).
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation produced a result contradicting a proved identity.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace bsat
