#pragma once

#include <stdexcept>
#include <string>

namespace vertexlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class UnsupportedPoleOrder : public Error {
public:
    using Error::Error;
};

class DegenerateParameter : public Error {
public:
    using Error::Error;
};

// Parameters outside a nonnegativity regime; the message quotes the inequality.
class RegimeError : public Error {
public:
    using Error::Error;
};

class MeasureUndefined : public Error {
public:
    using Error::Error;
};

class TruncationError : public Error {
public:
    using Error::Error;
};

class ContourError : public Error {
public:
    using Error::Error;
};

}  // namespace vertexlab
