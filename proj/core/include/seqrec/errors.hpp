#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqrec {

class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Bad numeric parameter (k < 2, r >= t, L >= U, range too small, ...).
class ParameterError : public Error {
public:
	using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
	using Error::Error;
};

class PreconditionError : public Error {
public:
	using Error::Error;
};

class DigitOrderError : public Error {
public:
	using Error::Error;
};

class InputError : public Error {
public:
	using Error::Error;
};

class ParseError : public Error {
public:
	ParseError(std::size_t line, const std::string& what)
		: Error("line " + std::to_string(line) + ": " + what), line_(line) {}

	std::size_t line() const noexcept { return line_; }

private:
	std::size_t line_;
};

} // namespace seqrec
