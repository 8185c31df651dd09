#pragma once

#include <vector>

#include "rnm/random_conjugate.hpp"
#include "rnm/rng.hpp"

namespace rnm {

/// Random atomic space with n atoms and strictly positive probabilities.
inline SpacePtr sample_space(Rng& rng, std::size_t n_atoms) {
  std::vector<std::string> ids;
  std::vector<double> probs(n_atoms);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_atoms; ++i) {
    ids.push_back("a" + std::to_string(i + 1));
    probs[i] = rng.uniform(0.05, 1.0);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  // fix residual rounding on the last atom so the sum is exact
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < n_atoms; ++i) partial += probs[i];
  probs[n_atoms - 1] = 1.0 - partial;
  return make_space(std::move(ids), std::move(probs));
}

template <scalar_field K>
inline L0Scalar<K> sample_l0(Rng& rng, const SpacePtr& space) {
  return L0Scalar<K>(space, rng.vec<K>(space->size()));
}

inline L0Scalar<double> sample_l0_nonneg(Rng& rng, const SpacePtr& space) {
  std::vector<double> v(space->size());
  for (double& x : v) x = std::abs(rng.normal());
  return L0Scalar<double>(space, std::move(v));
}

template <scalar_field K>
inline RNElement<K> sample_element(Rng& rng, const SpacePtr& space, std::size_t dim) {
  return RNElement<K>(space, dim, rng.vec<K>(space->size() * dim));
}

/// Element with per-atom Euclidean norm exactly <= 1 (uniform direction,
/// uniform radius).
template <scalar_field K>
inline RNElement<K> sample_unit_ball_element(Rng& rng, const SpacePtr& space,
                                             std::size_t dim) {
  std::vector<K> coords;
  coords.reserve(space->size() * dim);
  for (std::size_t a = 0; a < space->size(); ++a) {
    std::vector<K> dir = rng.unit_vec<K>(dim);
    double r = rng.uniform01();
    for (K& c : dir) coords.push_back(c * r);
  }
  return RNElement<K>(space, dim, std::move(coords));
}

/// Element with per-atom norm exactly 1.
template <scalar_field K>
inline RNElement<K> sample_unit_sphere_element(Rng& rng, const SpacePtr& space,
                                               std::size_t dim) {
  std::vector<K> coords;
  coords.reserve(space->size() * dim);
  for (std::size_t a = 0; a < space->size(); ++a) {
    std::vector<K> dir = rng.unit_vec<K>(dim);
    for (K& c : dir) coords.push_back(c);
  }
  return RNElement<K>(space, dim, std::move(coords));
}

template <scalar_field K>
inline RandomFunctional<K> sample_functional(Rng& rng, const SpacePtr& space,
                                             std::size_t dim) {
  return RandomFunctional<K>(sample_element<K>(rng, space, dim));
}

}  // namespace rnm
