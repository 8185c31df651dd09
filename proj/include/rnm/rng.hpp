#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "rnm/core.hpp"

namespace rnm {

/// Seeded sampler with explicit value derivations, so that identical seeds
/// give identical streams on every platform (std distributions are
/// implementation-defined; we avoid them).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0,1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller (no cached spare, fully reproducible).
  double normal() {
    double u1 = 1.0 - uniform01();  // (0,1]
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  bool coin(double p = 0.5) { return uniform01() < p; }

  template <scalar_field K>
  K scalar() {
    if constexpr (is_complex_v<K>) {
      return K(normal(), normal());
    } else {
      return normal();
    }
  }

  template <scalar_field K>
  std::vector<K> vec(std::size_t n) {
    std::vector<K> v(n);
    for (auto& c : v) c = scalar<K>();
    return v;
  }

  /// Uniform direction on the unit sphere of K^n (normalized Gaussian).
  template <scalar_field K>
  std::vector<K> unit_vec(std::size_t n) {
    while (true) {
      std::vector<K> v = vec<K>(n);
      double s = 0.0;
      for (const K& c : v) s += abs_of<K>(c) * abs_of<K>(c);
      s = std::sqrt(s);
      if (s > 1e-12) {
        for (K& c : v) c *= 1.0 / s;
        return v;
      }
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rnm
