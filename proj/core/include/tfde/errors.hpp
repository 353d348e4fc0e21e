#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfde {

/// Bad input to a public entry point (sizes, ranges, flags).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain: gamma poles, points off the unit square.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Non-finite value produced while evaluating user functions or series.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

    [[nodiscard]] double residual() const noexcept { return residual_; }
    [[nodiscard]] int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// The time stepper produced a non-finite coefficient at step `step`.
class NumericalBlowup : public std::runtime_error {
public:
    NumericalBlowup(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace tfde
