#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "rnm/atomic_space.hpp"
#include "rnm/core.hpp"

namespace rnm {

/// An element of L0(F,K) over an atomic space: one scalar per atom. Per-atom
/// values are the canonical representatives of the a.s. equivalence classes.
template <scalar_field K>
class L0Scalar {
 public:
  L0Scalar(SpacePtr space, std::vector<K> values)
      : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_->size()) {
      throw DomainError("L0Scalar: exactly one value per atom required");
    }
  }

  static L0Scalar constant(SpacePtr space, K value) {
    std::vector<K> v(space->size(), value);
    return L0Scalar(std::move(space), std::move(v));
  }
  static L0Scalar zero(SpacePtr space) { return constant(std::move(space), K{0}); }
  static L0Scalar one(SpacePtr space) { return constant(std::move(space), K{1}); }

  const SpacePtr& space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  K at(std::size_t i) const { return values_.at(i); }
  K& at(std::size_t i) { return values_.at(i); }
  const std::vector<K>& values() const { return values_; }

  bool in_l0_plus() const
    requires std::same_as<K, double>
  {
    for (double v : values_) {
      if (!(v >= 0.0)) return false;
    }
    return true;
  }

  bool in_l0_plus_plus() const
    requires std::same_as<K, double>
  {
    for (double v : values_) {
      if (!(v > 0.0)) return false;
    }
    return true;
  }

  L0Scalar operator+(const L0Scalar& o) const { return zip(o, [](K a, K b) { return a + b; }); }
  L0Scalar operator-(const L0Scalar& o) const { return zip(o, [](K a, K b) { return a - b; }); }
  L0Scalar operator*(const L0Scalar& o) const { return zip(o, [](K a, K b) { return a * b; }); }
  L0Scalar operator-() const { return map([](K a) { return -a; }); }

  L0Scalar operator*(K s) const { return map([s](K a) { return s * a; }); }
  L0Scalar operator+(K s) const { return map([s](K a) { return a + s; }); }

  friend L0Scalar operator*(K s, const L0Scalar& x) { return x * s; }

  bool operator==(const L0Scalar& o) const {
    return same_space(space_, o.space_) && values_ == o.values_;
  }

  template <typename F>
  L0Scalar map(F&& f) const {
    std::vector<K> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = f(values_[i]);
    return L0Scalar(space_, std::move(out));
  }

  template <typename F>
  L0Scalar zip(const L0Scalar& o, F&& f) const {
    require_same_space(space_, o.space_);
    std::vector<K> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = f(values_[i], o.values_[i]);
    return L0Scalar(space_, std::move(out));
  }

 private:
  SpacePtr space_;
  std::vector<K> values_;
};

/// Equivalence class of the characteristic function of A.
template <scalar_field K = double>
inline L0Scalar<K> indicator(const SpacePtr& space, const AtomSet& set) {
  require_same_space(space, set.space());
  std::vector<K> v(space->size(), K{0});
  for (std::size_t i : set.indices()) v[i] = K{1};
  return L0Scalar<K>(space, std::move(v));
}

namespace detail {

/// Reciprocal chosen among the faithful candidates so that v * r == 1.0
/// lands exactly (IEEE v * (1/v) is off by one ulp for a sizable fraction of
/// inputs). Falls back to the plain reciprocal when no candidate exists
/// (extreme magnitudes).
inline double exact_reciprocal(double v) {
  double r = 1.0 / v;
  if (v * r == 1.0) return r;
  double up = r;
  double down = r;
  for (int k = 0; k < 32; ++k) {
    up = std::nextafter(up, std::numeric_limits<double>::infinity());
    if (v * up == 1.0) return up;
    down = std::nextafter(down, -std::numeric_limits<double>::infinity());
    if (v * down == 1.0) return down;
  }
  return r;
}

/// Complex counterpart: nudge both components within a few ulps of 1/v until
/// the product is exactly 1 + 0i under the library's complex multiply. The
/// imaginary part vanishes exactly only when the two cross products round to
/// the same magnitude, so the real component is walked and the imaginary
/// component aimed at that cancellation.
inline std::complex<double> exact_reciprocal(std::complex<double> v) {
  using C = std::complex<double>;
  const C one{1.0, 0.0};
  C r = one / v;
  if (v * r == one) return r;
  const double a = v.real();
  const double b = v.imag();
  if (b == 0.0) return C(exact_reciprocal(a), 0.0);
  if (a == 0.0) return C(0.0, -exact_reciprocal(b));

  auto step = [](double x, int k) {
    const double dir = k > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
    for (int i = 0; i < std::abs(k); ++i) x = std::nextafter(x, dir);
    return x;
  };
  for (int k = -48; k <= 48; ++k) {
    const double c = step(r.real(), k);
    const double m = b * c;  // want a*d to round to exactly -m
    double d = -m / a;
    d = step(d, -4);
    for (int j = 0; j < 9; ++j) {
      if (v * C(c, d) == one) return C(c, d);
      d = std::nextafter(d, std::numeric_limits<double>::infinity());
    }
  }
  return r;
}

}  // namespace detail

/// Per-atom reciprocal with the 0 -> 0 convention. The zero test is exact,
/// and the returned reciprocal is adjusted within a few ulps so that
/// xi * pseudo_inverse(xi) is bit-exactly the indicator of the support.
template <scalar_field K>
inline L0Scalar<K> pseudo_inverse(const L0Scalar<K>& xi) {
  return xi.map([](K v) { return v == K{0} ? K{0} : detail::exact_reciprocal(v); });
}

template <scalar_field K>
inline L0Scalar<double> abs(const L0Scalar<K>& xi) {
  std::vector<double> out(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) out[i] = abs_of<K>(xi.at(i));
  return L0Scalar<double>(xi.space(), std::move(out));
}

template <scalar_field K>
inline L0Scalar<K> conj(const L0Scalar<K>& xi) {
  return xi.map([](K v) { return conj_of<K>(v); });
}

template <scalar_field K>
inline L0Scalar<double> re(const L0Scalar<K>& xi) {
  std::vector<double> out(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) out[i] = re_of<K>(xi.at(i));
  return L0Scalar<double>(xi.space(), std::move(out));
}

/// Promote a real L0 scalar into the field K.
template <scalar_field K>
inline L0Scalar<K> to_field(const L0Scalar<double>& xi) {
  if constexpr (is_complex_v<K>) {
    std::vector<K> out(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) out[i] = K(xi.at(i), 0.0);
    return L0Scalar<K>(xi.space(), std::move(out));
  } else {
    return xi;
  }
}

/// Atom-wise supremum of a nonempty finite family of real L0 scalars.
inline L0Scalar<double> sup(std::span<const L0Scalar<double>> set) {
  if (set.empty()) {
    throw DomainError("sup: empty collection");
  }
  L0Scalar<double> out = set[0];
  for (std::size_t k = 1; k < set.size(); ++k) {
    out = out.zip(set[k], [](double a, double b) { return std::max(a, b); });
  }
  return out;
}

inline L0Scalar<double> sup(std::initializer_list<L0Scalar<double>> set) {
  std::vector<L0Scalar<double>> v(set);
  return sup(std::span<const L0Scalar<double>>(v));
}

inline L0Scalar<double> sup(const L0Scalar<double>& a, const L0Scalar<double>& b) {
  return a.zip(b, [](double x, double y) { return std::max(x, y); });
}

/// xi <= eta on every atom.
inline bool leq(const L0Scalar<double>& xi, const L0Scalar<double>& eta) {
  require_same_space(xi.space(), eta.space());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!(xi.at(i) <= eta.at(i))) return false;
  }
  return true;
}

/// xi > eta on every atom of A.
inline bool gt_on(const L0Scalar<double>& xi, const L0Scalar<double>& eta,
                  const AtomSet& a) {
  require_same_space(xi.space(), eta.space());
  require_same_space(xi.space(), a.space());
  for (std::size_t i : a.indices()) {
    if (!(xi.at(i) > eta.at(i))) return false;
  }
  return true;
}

/// The set [xi > eta].
inline AtomSet bracket_gt(const L0Scalar<double>& xi, const L0Scalar<double>& eta) {
  require_same_space(xi.space(), eta.space());
  AtomSet out(xi.space());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi.at(i) > eta.at(i)) out.insert(i);
  }
  return out;
}

}  // namespace rnm
