#pragma once

#include <stdexcept>
#include <string>

namespace csl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A GameParams field violates its invariant; message names the field.
class InvalidParams : public Error {
public:
    using Error::Error;
};

// Rejected by Board::do_move / undo_move. The board is left unchanged.
class IllegalMove : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

// Agent configuration failed (bad params string, unknown key, ...).
class SetupError : public Error {
public:
    using Error::Error;
};

class UnknownAgent : public Error {
public:
    using Error::Error;
};

// Session config file problem; message carries the line number when known.
class ConfigError : public Error {
public:
    using Error::Error;
};

// The solver refused a position because its node budget ran out.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace csl
