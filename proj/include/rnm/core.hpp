#pragma once

#include <complex>
#include <concepts>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace rnm {

/// Scalar fields the library is instantiated over: R or C in double precision.
template <typename K>
concept scalar_field =
    std::same_as<K, double> || std::same_as<K, std::complex<double>>;

template <scalar_field K>
inline constexpr bool is_complex_v = std::same_as<K, std::complex<double>>;

template <scalar_field K>
inline double abs_of(K v) {
  if constexpr (is_complex_v<K>) {
    return std::abs(v);
  } else {
    return std::abs(v);
  }
}

template <scalar_field K>
inline K conj_of(K v) {
  if constexpr (is_complex_v<K>) {
    return std::conj(v);
  } else {
    return v;
  }
}

template <scalar_field K>
inline double re_of(K v) {
  if constexpr (is_complex_v<K>) {
    return v.real();
  } else {
    return v;
  }
}

/// Argument or state violates an operation's contract.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A documented precondition does not hold for the given input.
class PreconditionError : public DomainError {
 public:
  explicit PreconditionError(const std::string& what) : DomainError(what) {}
};

/// Internal invariant broken (e.g. a basis fails to reproduce a member).
class InconsistencyError : public std::logic_error {
 public:
  explicit InconsistencyError(const std::string& what)
      : std::logic_error(what) {}
};

/// lhs <= rhs up to a relative slack of tol*(1 + |rhs|).
inline bool leq_rel(double lhs, double rhs, double tol) {
  return lhs <= rhs + tol * (1.0 + std::abs(rhs));
}

inline bool near_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}

}  // namespace rnm
