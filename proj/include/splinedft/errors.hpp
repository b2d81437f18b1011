#ifndef SPLINEDFT_ERRORS_HPP
#define SPLINEDFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace splinedft {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pivot fell below the solver tolerance.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// A boundary-condition normal system (Gamma or Lambda) is numerically
/// singular; usually N is too small for the requested degree.
class SingularSystem : public Error {
public:
    SingularSystem(int theta, int n, const std::string& detail);
    int theta() const { return theta_; }
    int n() const { return n_; }

private:
    int theta_;
    int n_;
};

/// theta and N both even: det(M_{theta,k}) vanishes at k = N/2.
class ParityViolation : public Error {
public:
    ParityViolation(int theta, int n);
};

/// Consecutive-degree minimisation needs both M_{theta-1,k} and M_{theta,k}
/// invertible, which only holds for odd N.
class EvenNNotSupported : public Error {
public:
    explicit EvenNNotSupported(int n);
};

class DomainError : public Error {
public:
    using Error::Error;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

class BadOrder : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class TooFewPoints : public Error {
public:
    using Error::Error;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

/// Imaginary residue of a quantity that must be real exceeded tolerance.
class ImaginaryResidue : public Error {
public:
    using Error::Error;
};

/// Requested computation needs more digits than the active context provides.
class PrecisionRefused : public Error {
public:
    PrecisionRefused(int theta, int n, int digits, int required);
    int required() const { return required_; }

private:
    int required_;
};

}  // namespace splinedft

#endif  // SPLINEDFT_ERRORS_HPP
