#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chronoplot {

// Root of every error raised by the library. Subclasses identify the
// failing stage so callers (the CLI in particular) can map them to exit codes.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Unknown time zone, malformed zone file, bad landmarks.
class ConfigError : public Error
{
public:
    using Error::Error;
};

class ArgumentError : public Error
{
public:
    using Error::Error;
};

// A conversion between two granularities the calendar lattice does not relate.
class IncompatibleGranularity : public Error
{
public:
    using Error::Error;
};

// CSV content that cannot be turned into a series; carries the 1-based line.
class IngestionError : public Error
{
public:
    IngestionError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what)
        , line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Declared column missing from the input.
class SchemaError : public Error
{
public:
    using Error::Error;
};

// Invalid plot specification.
class SpecError : public Error
{
public:
    using Error::Error;
};

class ScaleError : public Error
{
public:
    using Error::Error;
};

class RenderError : public Error
{
public:
    using Error::Error;
};

} // namespace chronoplot
