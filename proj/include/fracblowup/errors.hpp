#pragma once

#include <stdexcept>
#include <string>

namespace fracblowup {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural hypothesis on the nonlinearity fails on the sampled grid
/// (e.g. t f'(t)/f(t) <= 1 somewhere, so no positive lower envelope exists).
class HypothesisViolation : public Error {
public:
    HypothesisViolation(const std::string& msg, double offending_t)
        : Error(msg), offending_t_(offending_t) {}
    double offending_t() const { return offending_t_; }

private:
    double offending_t_;
};

/// Evaluation outside the sampled/representable range of a model or table.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// A numerical integration did not reach the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& msg, double achieved)
        : Error(msg), achieved_(achieved) {}
    double achieved_tolerance() const { return achieved_; }

private:
    double achieved_;
};

/// An improper integral that the construction requires to be finite diverges.
class DivergentIntegralError : public Error {
public:
    using Error::Error;
};

/// A source term is not integrable against the delta^s weight; the numerical
/// shadow of the growth condition on f failing.
class IntegrabilityError : public Error {
public:
    using Error::Error;
};

/// Evaluation point too close to the boundary for the operator stencil.
class ProximityError : public Error {
public:
    ProximityError(const std::string& msg, double min_admissible_delta)
        : Error(msg), min_delta_(min_admissible_delta) {}
    double min_admissible_delta() const { return min_delta_; }

private:
    double min_delta_;
};

/// Fixed-point iteration exhausted its budget without meeting tolerance.
class IterationError : public Error {
public:
    using Error::Error;
};

/// Invalid or inadmissible input data (configs, tables, exterior data).
class DataError : public Error {
public:
    using Error::Error;
};

/// The assembled supersolution failed its global re-verification.
class SupersolutionError : public Error {
public:
    using Error::Error;
};

}  // namespace fracblowup
