#ifndef SIGNET_ERRORS_HPP
#define SIGNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace signet {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DisconnectedGraphError : public Error {
public:
    explicit DisconnectedGraphError(const std::string& what = "graph is not connected")
        : Error(what) {}
};

class NoSuchEdgeError : public Error {
public:
    explicit NoSuchEdgeError(const std::string& what = "edge id out of range") : Error(what) {}
};

class LoopContractionError : public Error {
public:
    explicit LoopContractionError(const std::string& what = "cannot contract a loop")
        : Error(what) {}
};

class ZeroWeightError : public Error {
public:
    explicit ZeroWeightError(const std::string& what = "zero edge weight") : Error(what) {}
};

class TooLargeError : public Error {
public:
    explicit TooLargeError(const std::string& what = "input exceeds enumeration limits")
        : Error(what) {}
};

class ZeroPolynomialError : public Error {
public:
    explicit ZeroPolynomialError(const std::string& what = "polynomial is identically zero")
        : Error(what) {}
};

class EmptyNegativePartError : public Error {
public:
    explicit EmptyNegativePartError(const std::string& what = "graph has no negative edges")
        : Error(what) {}
};

class NegativeParameterError : public Error {
public:
    explicit NegativeParameterError(const std::string& what = "homotopy parameter must be >= 0")
        : Error(what) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

class InvalidCycleError : public Error {
public:
    explicit InvalidCycleError(const std::string& what) : Error(what) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what = "eigensolver failed to converge")
        : Error(what) {}
};

class TooFewSamplesError : public Error {
public:
    explicit TooFewSamplesError(const std::string& what = "not enough samples") : Error(what) {}
};

/// Parse failure with a 1-based line number (0 when not line-specific).
class ParseError : public Error {
public:
    ParseError(const std::string& what, long line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

class DuplicateEdgeError : public ParseError {
public:
    DuplicateEdgeError(const std::string& what, long line) : ParseError(what, line) {}
};

} // namespace signet

#endif // SIGNET_ERRORS_HPP
