#include "splinedft/precision.hpp"

#include <cmath>
#include <string>

#include "splinedft/errors.hpp"

namespace splinedft {

PrecisionContext::PrecisionContext(int digits) : digits_(digits) {
    if (digits < kBinary64Digits)
        throw DomainError("precision: at least " + std::to_string(kBinary64Digits) + " digits required, got " +
                          std::to_string(digits));
    tolerance_ = std::pow(10.0, 4 - digits);
}

PrecisionScope::PrecisionScope(const PrecisionContext& ctx) : previous_(HighReal::default_precision()) {
    // A few guard digits beyond the requested significant digits.
    HighReal::default_precision(static_cast<unsigned>(ctx.digits() + 5));
}

PrecisionScope::~PrecisionScope() { HighReal::default_precision(previous_); }

SingularSystem::SingularSystem(int theta, int n, const std::string& detail)
    : Error("boundary system is singular for theta=" + std::to_string(theta) + ", N=" + std::to_string(n) +
            " (" + detail + "); N is likely too small for this degree"),
      theta_(theta),
      n_(n) {}

ParityViolation::ParityViolation(int theta, int n)
    : Error("theta=" + std::to_string(theta) + " and N=" + std::to_string(n) +
            " are both even: det(M_{theta,N/2}) = 0") {}

EvenNNotSupported::EvenNNotSupported(int n)
    : Error("consecutive-degree boundary solver needs odd N, got N=" + std::to_string(n)) {}

PrecisionRefused::PrecisionRefused(int theta, int n, int digits, int required)
    : Error("theta=" + std::to_string(theta) + ", N=" + std::to_string(n) + " needs at least " +
            std::to_string(required) + " digits, context has " + std::to_string(digits)),
      required_(required) {}

}  // namespace splinedft
