#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chilab {

// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NonPrimeCharacteristic : public Error {
public:
    using Error::Error;
};

class SizeCapExceeded : public Error {
public:
    using Error::Error;
};

class WrongTower : public Error {
public:
    using Error::Error;
};

class ZeroElement : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class NotInAmbientGroup : public Error {
public:
    using Error::Error;
};

class WitnessSearchExhausted : public Error {
public:
    using Error::Error;
};

class BadCharacteristic : public Error {
public:
    using Error::Error;
};

class NotPrimitiveCubeRoot : public Error {
public:
    using Error::Error;
};

class CertificateNotFound : public Error {
public:
    using Error::Error;
};

// Parse failure; `position` is a 0-based offset into the input text.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};

class ArityExceeded : public Error {
public:
    using Error::Error;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace chilab
