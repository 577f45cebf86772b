#pragma once

#include <stdexcept>
#include <string>

namespace biorth {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rational literal or key-value record could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A parameter record violates its own validity predicate.
class InvalidParams : public Error {
public:
    using Error::Error;
};

/// Some denominator in a recurrence or closed form vanishes at these parameters.
class SingularParams : public Error {
public:
    using Error::Error;
};

/// A terminating series hits a vanishing (b;q)_k or (q;q)_k factor.
class DenominatorVanishes : public Error {
public:
    using Error::Error;
};

/// q = 0 or q = 1, where the ed-rewrite is unavailable.
class UnsupportedQ : public Error {
public:
    using Error::Error;
};

/// A word lacks the boundary letter an elimination step needs.
class ShapeError : public Error {
public:
    using Error::Error;
};

class NegativeRadicand : public Error {
public:
    using Error::Error;
};

/// One of a, b, c, d is zero where its reciprocal is needed.
class ZeroParameter : public Error {
public:
    using Error::Error;
};

/// Requested size exceeds a cost guard.
class SizeLimit : public Error {
public:
    using Error::Error;
};

/// The generator's null space is not one-dimensional.
class NotIrreducible : public Error {
public:
    using Error::Error;
};

}  // namespace biorth
