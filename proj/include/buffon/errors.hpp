#pragma once

#include <stdexcept>
#include <string>

namespace buffon {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument outside a documented domain (zero denominator, bad
// constant name, theta outside (0,1), ...).
struct DomainError : Error {
    using Error::Error;
};

// Division by zero, zero raised to a negative power.
struct ArithmeticError : Error {
    using Error::Error;
};

// A replay bit source ran out of stored bits.
struct ExhaustedError : Error {
    using Error::Error;
};

// The max-terms cap was hit while refining an interval. Signals a series
// provider whose error bound does not actually shrink.
struct DivergenceError : Error {
    using Error::Error;
};

// The per-sample iteration cap was hit. Pr[M > 4096] = 2^-4096, so this
// only happens on a broken provider or bit source.
struct IterationCapError : Error {
    using Error::Error;
};

// A series adapter precondition failed at evaluation time (e.g. a
// computed term is not positive).
struct ContractViolationError : Error {
    using Error::Error;
};

}  // namespace buffon
