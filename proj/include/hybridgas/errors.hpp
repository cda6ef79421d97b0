#pragma once

#include <stdexcept>
#include <string>

namespace hybridgas {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a standing hypothesis: a matrix that is not Hurwitz,
/// a negative slope, a non-positive jump parameter, a non-finite value.
class HypothesisError : public Error {
public:
    using Error::Error;
};

enum class SigmaBranch { Sigma1, Sigma2 };
enum class CrossingFailure { Tangency, SignMismatch };

/// The two vector fields do not cross the switching line consistently.
class CrossingError : public Error {
public:
    CrossingError(SigmaBranch branch, CrossingFailure failure, const std::string& what)
        : Error(what), branch_(branch), failure_(failure) {}

    [[nodiscard]] SigmaBranch branch() const noexcept { return branch_; }
    [[nodiscard]] CrossingFailure failure() const noexcept { return failure_; }

private:
    SigmaBranch branch_;
    CrossingFailure failure_;
};

/// An operation was called outside its domain (e.g. a displacement map
/// requested for a system whose node side captures every orbit).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace hybridgas
