#pragma once

#include <variant>
#include <vector>

#include "rnm/convex_geometry.hpp"
#include "rnm/linalg.hpp"
#include "rnm/rn_element.hpp"

namespace rnm {

/// An L0-convex body over an atomic space: per atom, either a closed
/// Euclidean ball or the convex hull of finitely many points. Atom-wise
/// convexity realizes L0-convexity (with the countable concatenation
/// property) over atomic spaces.
template <scalar_field K>
class ConvexBody {
 public:
  struct Ball {
    std::vector<K> center;
    double radius = 0.0;
  };
  struct Hull {
    std::vector<std::vector<K>> points;
  };
  using AtomDesc = std::variant<Ball, Hull>;

  ConvexBody(SpacePtr space, std::size_t dim, std::vector<AtomDesc> descs,
             bool nonempty_interior = false)
      : space_(std::move(space)),
        dim_(dim),
        descs_(std::move(descs)),
        nonempty_interior_(nonempty_interior) {
    if (dim_ == 0) throw DomainError("ConvexBody: dim must be positive");
    if (descs_.size() != space_->size()) {
      throw DomainError("ConvexBody: exactly one description per atom");
    }
    for (const auto& d : descs_) {
      if (const Ball* b = std::get_if<Ball>(&d)) {
        if (b->center.size() != dim_) throw DomainError("ConvexBody: center dim mismatch");
        if (b->radius < 0.0) throw DomainError("ConvexBody: negative radius");
      } else {
        const Hull& h = std::get<Hull>(d);
        if (h.points.empty()) throw DomainError("ConvexBody: hull needs points");
        for (const auto& p : h.points) {
          if (p.size() != dim_) throw DomainError("ConvexBody: point dim mismatch");
        }
      }
    }
  }

  const SpacePtr& space() const { return space_; }
  std::size_t dim() const { return dim_; }
  bool nonempty_interior() const { return nonempty_interior_; }
  const AtomDesc& desc(std::size_t atom) const { return descs_.at(atom); }

  /// Realified per-atom geometry.
  BodyGeom geom(std::size_t atom) const {
    const AtomDesc& d = descs_.at(atom);
    BodyGeom g;
    if (const Ball* b = std::get_if<Ball>(&d)) {
      g.is_ball = true;
      g.center = realify<K>(std::span<const K>(b->center));
      g.radius = b->radius;
    } else {
      const Hull& h = std::get<Hull>(d);
      const Eigen::Index rd = realify<K>(std::span<const K>(h.points[0])).size();
      g.points.resize(rd, static_cast<Eigen::Index>(h.points.size()));
      for (std::size_t j = 0; j < h.points.size(); ++j) {
        g.points.col(static_cast<Eigen::Index>(j)) =
            realify<K>(std::span<const K>(h.points[j]));
      }
    }
    return g;
  }

  /// x belongs to the body atom-wise, with a small projection tolerance.
  bool contains(const RNElement<K>& x, double tol = 1e-9) const {
    require_same_space(space_, x.space());
    if (x.dim() != dim_) throw DomainError("ConvexBody: element dim mismatch");
    for (std::size_t a = 0; a < space_->size(); ++a) {
      BodyGeom g = geom(a);
      Eigen::VectorXd z = realify<K>(x.atom_coords(a));
      if (!contains_point(g, z, tol * (1.0 + g.max_coord_norm()))) return false;
    }
    return true;
  }

 private:
  SpacePtr space_;
  std::size_t dim_;
  std::vector<AtomDesc> descs_;
  bool nonempty_interior_;
};

}  // namespace rnm
