#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arz {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition breach in a pure model function (e.g. k outside [0, k_jam]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A parameter or scenario field violates its invariant. Carries the field name.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& msg)
        : Error(field + ": " + msg), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Config text could not be parsed. Line numbers are 1-based, 0 = unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Config key not in the schema (the schema is strict).
class UnknownKeyError : public Error {
public:
    explicit UnknownKeyError(std::string key)
        : Error("unknown config key: " + key), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Snapshots on different grids or at different times cannot be compared.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// Numerical failure during time stepping. run() annotates the failing step.
class SolverError : public Error {
public:
    explicit SolverError(std::string msg) : Error(msg), base_(std::move(msg)) {}

    void set_step(long step) {
        step_ = step;
        annotated_ = base_ + " (step " + std::to_string(step) + ")";
    }
    long step() const noexcept { return step_; }

    const char* what() const noexcept override {
        return annotated_.empty() ? base_.c_str() : annotated_.c_str();
    }

private:
    std::string base_;
    std::string annotated_;
    long step_ = -1;
};

/// Pre-step CFL check failed (Courant number above the hard limit of 1).
class CflViolation : public SolverError {
public:
    CflViolation(double cfl, double limit)
        : SolverError("CFL violation: " + std::to_string(cfl) + " exceeds " +
                      std::to_string(limit)),
          cfl_(cfl) {}
    double cfl() const noexcept { return cfl_; }

private:
    double cfl_;
};

/// A stage produced NaN or Inf — the integration blew up.
class NonFiniteError : public SolverError {
public:
    NonFiniteError(const std::string& stage, std::size_t cell)
        : SolverError("non-finite value after " + stage + " at cell " + std::to_string(cell)),
          stage_(stage), cell_(cell) {}
    const std::string& stage() const noexcept { return stage_; }
    std::size_t cell() const noexcept { return cell_; }

private:
    std::string stage_;
    std::size_t cell_;
};

}  // namespace arz
