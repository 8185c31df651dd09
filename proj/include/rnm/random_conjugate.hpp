#pragma once

#include <vector>

#include "rnm/rn_element.hpp"

namespace rnm {

/// A P-a.e. bounded random linear functional on L0(F,K^d), represented by its
/// Riesz vector: f(x) = <x, riesz>. The random norm ||f||* then equals
/// ||riesz|| atom-wise.
template <scalar_field K>
class RandomFunctional {
 public:
  explicit RandomFunctional(RNElement<K> riesz) : riesz_(std::move(riesz)) {}

  static RandomFunctional zero(SpacePtr space, std::size_t dim) {
    return RandomFunctional(RNElement<K>::zero(std::move(space), dim));
  }

  const RNElement<K>& riesz() const { return riesz_; }
  const SpacePtr& space() const { return riesz_.space(); }
  std::size_t dim() const { return riesz_.dim(); }

  RandomFunctional operator+(const RandomFunctional& o) const {
    return RandomFunctional(riesz_ + o.riesz_);
  }
  RandomFunctional operator-(const RandomFunctional& o) const {
    return RandomFunctional(riesz_ - o.riesz_);
  }

  bool operator==(const RandomFunctional& o) const { return riesz_ == o.riesz_; }

 private:
  RNElement<K> riesz_;
};

template <scalar_field K>
inline L0Scalar<K> evaluate(const RandomFunctional<K>& f, const RNElement<K>& x) {
  return inner(x, f.riesz());
}

/// ||f||* as the per-atom Euclidean norm of the Riesz vector; coincides with
/// the supremum definition sup{|f(y)| : ||y|| <= 1}.
template <scalar_field K>
inline L0Scalar<double> functional_norm(const RandomFunctional<K>& f) {
  return norm(f.riesz());
}

/// Module action on functionals: (xi.f)(x) = xi * f(x). The stored Riesz
/// vector is conj(xi) * riesz so that evaluation stays a plain inner product.
template <scalar_field K>
inline RandomFunctional<K> scalar_mul(const L0Scalar<K>& xi,
                                      const RandomFunctional<K>& f) {
  return RandomFunctional<K>(scalar_mul(conj(xi), f.riesz()));
}

/// J(x): the random natural embedding of x into the bidual, as a callable
/// view g |-> g(x).
template <scalar_field K>
class NaturalEmbedding {
 public:
  explicit NaturalEmbedding(RNElement<K> x) : x_(std::move(x)) {}

  L0Scalar<K> operator()(const RandomFunctional<K>& g) const {
    return evaluate(g, x_);
  }

  const RNElement<K>& element() const { return x_; }

 private:
  RNElement<K> x_;
};

template <scalar_field K>
inline NaturalEmbedding<K> embed(const RNElement<K>& x) {
  return NaturalEmbedding<K>(x);
}

/// A bidual element observed extensionally through finitely many values
/// l(f_i); everything the density constructions consume.
template <scalar_field K>
struct BidualTarget {
  std::vector<RandomFunctional<K>> functionals;
  std::vector<L0Scalar<K>> targets;

  BidualTarget(std::vector<RandomFunctional<K>> fs, std::vector<L0Scalar<K>> ts)
      : functionals(std::move(fs)), targets(std::move(ts)) {
    if (functionals.empty() || functionals.size() != targets.size()) {
      throw DomainError("BidualTarget: need equally many functionals and targets");
    }
    const SpacePtr& sp = functionals.front().space();
    for (const auto& f : functionals) require_same_space(f.space(), sp);
    for (const auto& t : targets) require_same_space(t.space(), sp);
  }
};

}  // namespace rnm
