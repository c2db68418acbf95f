#pragma once

#include <stdexcept>
#include <string>

namespace idiorec {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (ontology dump, profile file, URL, config).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that is inconsistent or insufficient for the request.
class DataError : public Error {
public:
    using Error::Error;
};

/// Caller asked for something the contract forbids (bad argument, bad flag).
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace idiorec
