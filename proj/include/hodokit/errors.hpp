#pragma once

#include <stdexcept>
#include <string>

namespace hodokit {

/// Base class for inputs outside an operation's mathematical domain.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Position at (or numerically indistinguishable from) the force center.
struct SingularPosition : DomainError {
    SingularPosition() : DomainError("singular position (|x| = 0)") {}
    explicit SingularPosition(const std::string& msg) : DomainError(msg) {}
};

/// Vanishing angular momentum: the motion is radial and no orbital plane exists.
struct DegenerateRadialMotion : DomainError {
    DegenerateRadialMotion() : DomainError("degenerate radial motion (J = 0)") {}
};

/// State does not lie in the given orbital plane.
struct OutOfPlane : DomainError {
    OutOfPlane() : DomainError("state does not lie in the orbital plane") {}
};

/// Polar angle outside the admissible range of the conic branch.
struct OutsideBranch : DomainError {
    OutsideBranch() : DomainError("polar angle outside the conic branch") {}
    explicit OutsideBranch(const std::string& msg) : DomainError(msg) {}
};

/// Operation requires hyperbolic motion (e > 1, equivalently h > 0).
struct NotHyperbolic : DomainError {
    NotHyperbolic() : DomainError("not hyperbolic (e <= 1)") {}
    explicit NotHyperbolic(const std::string& msg) : DomainError(msg) {}
};

/// Circle fit input is collinear within conditioning tolerance.
struct DegenerateCollinear : DomainError {
    DegenerateCollinear() : DomainError("circle fit input is collinear") {}
};

/// Base class for failures of the numerical integrator.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepLimitExceeded : NumericalError {
    StepLimitExceeded() : NumericalError("integrator step limit exceeded") {}
};

struct NonFinite : NumericalError {
    NonFinite() : NumericalError("non-finite value encountered during integration") {}
};

}  // namespace hodokit
