#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "rnm/l0_scalar.hpp"

namespace rnm {

/// An element of the concrete RIP module L0(F,K^d): one d-vector per atom,
/// module action of L0(F,K) and the atom-wise Euclidean random inner product.
template <scalar_field K>
class RNElement {
 public:
  RNElement(SpacePtr space, std::size_t dim, std::vector<K> coords)
      : space_(std::move(space)), dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw DomainError("RNElement: dim must be positive");
    if (coords_.size() != space_->size() * dim_) {
      throw DomainError("RNElement: coords must hold one d-vector per atom");
    }
  }

  static RNElement zero(SpacePtr space, std::size_t dim) {
    std::vector<K> c(space->size() * dim, K{0});
    return RNElement(std::move(space), dim, std::move(c));
  }

  const SpacePtr& space() const { return space_; }
  std::size_t dim() const { return dim_; }

  K at(std::size_t atom, std::size_t j) const { return coords_.at(atom * dim_ + j); }
  K& at(std::size_t atom, std::size_t j) { return coords_.at(atom * dim_ + j); }

  std::span<const K> atom_coords(std::size_t atom) const {
    return std::span<const K>(coords_).subspan(atom * dim_, dim_);
  }

  const std::vector<K>& coords() const { return coords_; }

  RNElement operator+(const RNElement& o) const {
    check_shape(o);
    std::vector<K> out(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i] + o.coords_[i];
    return RNElement(space_, dim_, std::move(out));
  }

  RNElement operator-(const RNElement& o) const {
    check_shape(o);
    std::vector<K> out(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i] - o.coords_[i];
    return RNElement(space_, dim_, std::move(out));
  }

  RNElement operator-() const {
    std::vector<K> out(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = -coords_[i];
    return RNElement(space_, dim_, std::move(out));
  }

  bool operator==(const RNElement& o) const {
    return same_space(space_, o.space_) && dim_ == o.dim_ && coords_ == o.coords_;
  }

  bool is_zero() const {
    for (const K& c : coords_) {
      if (c != K{0}) return false;
    }
    return true;
  }

  void check_shape(const RNElement& o) const {
    require_same_space(space_, o.space_);
    if (dim_ != o.dim_) throw DomainError("RNElement: dimension mismatch");
  }

 private:
  SpacePtr space_;
  std::size_t dim_;
  std::vector<K> coords_;
};

template <scalar_field K>
inline RNElement<K> add(const RNElement<K>& x, const RNElement<K>& y) {
  return x + y;
}

/// Module action: atom-wise scaling of the d-vector by the atom's scalar.
template <scalar_field K>
inline RNElement<K> scalar_mul(const L0Scalar<K>& xi, const RNElement<K>& x) {
  require_same_space(xi.space(), x.space());
  std::vector<K> out(x.coords().size());
  for (std::size_t a = 0; a < x.space()->size(); ++a) {
    for (std::size_t j = 0; j < x.dim(); ++j) {
      out[a * x.dim() + j] = xi.at(a) * x.at(a, j);
    }
  }
  return RNElement<K>(x.space(), x.dim(), std::move(out));
}

template <scalar_field K>
inline RNElement<K> scalar_mul(const L0Scalar<double>& xi, const RNElement<K>& x)
  requires is_complex_v<K>
{
  return scalar_mul(to_field<K>(xi), x);
}

/// <x,y> = sum_j xi_j * conj(eta_j) per atom.
template <scalar_field K>
inline L0Scalar<K> inner(const RNElement<K>& x, const RNElement<K>& y) {
  x.check_shape(y);
  std::vector<K> out(x.space()->size(), K{0});
  for (std::size_t a = 0; a < x.space()->size(); ++a) {
    K s{0};
    for (std::size_t j = 0; j < x.dim(); ++j) {
      s += x.at(a, j) * conj_of<K>(y.at(a, j));
    }
    out[a] = s;
  }
  return L0Scalar<K>(x.space(), std::move(out));
}

/// ||x|| = sqrt(<x,x>): per-atom Euclidean norm, an element of L0_+.
template <scalar_field K>
inline L0Scalar<double> norm(const RNElement<K>& x) {
  std::vector<double> out(x.space()->size(), 0.0);
  for (std::size_t a = 0; a < x.space()->size(); ++a) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.dim(); ++j) {
      double m = abs_of<K>(x.at(a, j));
      s += m * m;
    }
    out[a] = std::sqrt(s);
  }
  return L0Scalar<double>(x.space(), std::move(out));
}

}  // namespace rnm
