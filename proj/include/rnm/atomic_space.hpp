#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "rnm/core.hpp"

namespace rnm {

/// A finite probability space given by its atoms. Every measurable set is a
/// union of atoms, so a.s. statements become per-atom statements and null
/// sets disappear.
class AtomicSpace {
 public:
  AtomicSpace(std::vector<std::string> ids, std::vector<double> probs)
      : ids_(std::move(ids)), probs_(std::move(probs)) {
    if (ids_.empty() || ids_.size() != probs_.size()) {
      throw DomainError("AtomicSpace: need matching, nonempty ids and probs");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (!(probs_[i] > 0.0)) {
        throw DomainError("AtomicSpace: prob of atom '" + ids_[i] +
                          "' must be > 0");
      }
      sum += probs_[i];
      if (!index_.emplace(ids_[i], i).second) {
        throw DomainError("AtomicSpace: duplicate atom id '" + ids_[i] + "'");
      }
    }
    if (std::abs(sum - 1.0) > 1e-12 * std::max(1.0, std::abs(sum))) {
      throw DomainError("AtomicSpace: probs must sum to 1");
    }
  }

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<double>& probs() const { return probs_; }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
      throw DomainError("AtomicSpace: unknown atom id '" + id + "'");
    }
    return it->second;
  }

  bool operator==(const AtomicSpace& other) const {
    return ids_ == other.ids_ && probs_ == other.probs_;
  }

 private:
  std::vector<std::string> ids_;
  std::vector<double> probs_;
  std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const AtomicSpace>;

inline SpacePtr make_space(std::vector<std::string> ids,
                           std::vector<double> probs) {
  return std::make_shared<const AtomicSpace>(std::move(ids), std::move(probs));
}

/// Uniform space with ids "a1".."an".
inline SpacePtr make_uniform_space(std::size_t n) {
  std::vector<std::string> ids;
  std::vector<double> probs(n, 1.0 / static_cast<double>(n));
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back("a" + std::to_string(i + 1));
  return make_space(std::move(ids), std::move(probs));
}

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!same_space(a, b)) {
    throw DomainError("operands live on different atomic spaces");
  }
}

/// A measurable set, i.e. a set of atoms of one space.
class AtomSet {
 public:
  explicit AtomSet(SpacePtr space)
      : space_(std::move(space)), member_(space_->size(), false) {}

  AtomSet(SpacePtr space, const std::vector<std::size_t>& indices)
      : space_(std::move(space)), member_(space_->size(), false) {
    for (std::size_t i : indices) {
      if (i >= member_.size()) {
        throw DomainError("AtomSet: atom index out of range");
      }
      member_[i] = true;
    }
  }

  static AtomSet from_ids(SpacePtr space,
                          const std::vector<std::string>& ids) {
    AtomSet s(space);
    for (const auto& id : ids) s.member_[s.space_->index_of(id)] = true;
    return s;
  }

  static AtomSet full(SpacePtr space) {
    AtomSet s(std::move(space));
    std::fill(s.member_.begin(), s.member_.end(), true);
    return s;
  }

  const SpacePtr& space() const { return space_; }
  bool contains(std::size_t i) const { return member_.at(i); }
  void insert(std::size_t i) { member_.at(i) = true; }

  std::size_t count() const {
    return static_cast<std::size_t>(
        std::count(member_.begin(), member_.end(), true));
  }
  bool empty() const { return count() == 0; }

  double measure() const {
    double m = 0.0;
    for (std::size_t i = 0; i < member_.size(); ++i) {
      if (member_[i]) m += space_->prob(i);
    }
    return m;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < member_.size(); ++i) {
      if (member_[i]) out.push_back(i);
    }
    return out;
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (std::size_t i : indices()) out.push_back(space_->id(i));
    return out;
  }

  AtomSet operator&(const AtomSet& other) const {
    require_same_space(space_, other.space_);
    AtomSet out(space_);
    for (std::size_t i = 0; i < member_.size(); ++i) {
      out.member_[i] = member_[i] && other.member_[i];
    }
    return out;
  }

  AtomSet operator|(const AtomSet& other) const {
    require_same_space(space_, other.space_);
    AtomSet out(space_);
    for (std::size_t i = 0; i < member_.size(); ++i) {
      out.member_[i] = member_[i] || other.member_[i];
    }
    return out;
  }

  AtomSet complement() const {
    AtomSet out(space_);
    for (std::size_t i = 0; i < member_.size(); ++i) {
      out.member_[i] = !member_[i];
    }
    return out;
  }

  bool operator==(const AtomSet& other) const {
    return same_space(space_, other.space_) && member_ == other.member_;
  }

 private:
  SpacePtr space_;
  std::vector<bool> member_;
};

}  // namespace rnm
