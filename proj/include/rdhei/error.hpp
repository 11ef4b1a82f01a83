#pragma once

#include <stdexcept>
#include <string>

namespace rdhei {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid scheme parameters, dimensions, or key material.
class ParamError : public Error {
public:
    using Error::Error;
};

// Malformed or truncated PGM data.
class PgmError : public Error {
public:
    using Error::Error;
};

// Payload does not fit the available embedding space.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Compressed side info + bitstream exceed the embeddable bits.
class VacatingError : public Error {
public:
    using Error::Error;
};

// Arithmetic-coder or side-info bitstream failure.
class CodecError : public Error {
public:
    using Error::Error;
};

// Share data is internally inconsistent (damaged or tampered).
class CorruptionError : public Error {
public:
    using Error::Error;
};

// Embedded data cannot be parsed out of a marked share.
class ExtractionError : public Error {
public:
    using Error::Error;
};

// Image recovery preconditions not met (too few shares, mixed parameters).
class RecoveryError : public Error {
public:
    using Error::Error;
};

} // namespace rdhei
