#pragma once

#include <stdexcept>
#include <string>

namespace rdiag {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Atom weights whose sum deviates from 1 beyond tolerance; never silently
// renormalized.
struct NormalizationError : std::invalid_argument {
  explicit NormalizationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Moment or integral that does not exist because of an atom at zero.
struct SingularMomentError : DomainError {
  explicit SingularMomentError(const std::string& msg) : DomainError(msg) {}
};

// Integral diverges (detected analytically or by a failed tail test).
struct DivergentIntegral : std::runtime_error {
  explicit DivergentIntegral(const std::string& msg) : std::runtime_error(msg) {}
};

// t = 0 subordination queries with |lambda| at or below the inner radius of
// the annulus: s(|lambda|, 0+) degenerates to 0.
struct BelowInnerRadius : DomainError {
  explicit BelowInnerRadius(const std::string& msg) : DomainError(msg) {}
};

// t = 0 subordination queries with |lambda| at or beyond the outer radius:
// s(|lambda|, 0+) diverges.
struct AboveOuterRadius : DomainError {
  explicit AboveOuterRadius(const std::string& msg) : DomainError(msg) {}
};

// Point masses carry no subordination data: the operator is a scalar multiple
// of a Haar unitary and its Brown measure (uniform on a circle) is out of
// scope for the radial machinery.
struct DiracUnsupported : DomainError {
  explicit DiracUnsupported(const std::string& msg) : DomainError(msg) {}
};

// Monte Carlo / sampling failure (persistent singular draws, run-level
// numerical breakdown).
struct SimulationError : std::runtime_error {
  explicit SimulationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dense decomposition failure (eigensolver or SVD did not converge).
struct LinAlgError : std::runtime_error {
  explicit LinAlgError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bounding box leaves less than the required padding around the spectrum.
struct BoxTooTight : std::invalid_argument {
  explicit BoxTooTight(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace rdiag
