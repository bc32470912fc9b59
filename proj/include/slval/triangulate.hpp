#pragma once

// Face-to-face triangulations and exact volume.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "slval/error.hpp"
#include "slval/linalg.hpp"
#include "slval/polytope.hpp"

namespace slval {

/// Affinely independent vertex set, stored sorted.
class Simplex {
 public:
  Simplex(std::size_t ambient_dim, std::vector<Vector> vertices) : n_(ambient_dim), v_(std::move(vertices)) {
    if (v_.empty()) throw GeometryError("simplex without vertices");
    for (const auto& v : v_) {
      if (v.size() != n_) throw GeometryError("simplex: mixed ambient dimensions");
    }
    std::sort(v_.begin(), v_.end());
    if (affine_rank(v_) + 1 != v_.size()) throw GeometryError("simplex vertices are affinely dependent");
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return v_.size() - 1; }
  const std::vector<Vector>& vertices() const noexcept { return v_; }

  bool has_origin_vertex() const {
    const Vector zero(n_);
    return std::binary_search(v_.begin(), v_.end(), zero);
  }

  Polytope polytope() const { return Polytope::from_extreme(n_, v_); }

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex& a, const Simplex& b) { return a.v_ <=> b.v_; }

 private:
  std::size_t n_;
  std::vector<Vector> v_;
};

struct Triangulation {
  std::size_t dim = 0;
  std::vector<Simplex> simplices;

  std::size_t size() const noexcept { return simplices.size(); }
};

inline Scalar factorial(std::size_t n) {
  Scalar f(1);
  for (std::size_t i = 2; i <= n; ++i) f *= Scalar(i);
  return f;
}

/// |det(v1 - v0, ..., vn - v0)| / n!, or 0 for a lower-dimensional simplex.
inline Scalar simplex_volume(const Simplex& s) {
  const std::size_t n = s.ambient_dim();
  if (s.dim() != n) return Scalar(0);
  Matrix m(n, n);
  const auto& v = s.vertices();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i + 1][j] - v[0][j];
  }
  return abs(det(m)) / factorial(n);
}

namespace detail {

// Pulling triangulation of the face spanned by vertices[face] (sorted indices).
inline void pull(const std::vector<Vector>& vertices, std::size_t n, const std::vector<std::size_t>& face,
                 std::span<const std::size_t> priority, std::vector<std::vector<std::size_t>>& out) {
  std::vector<Vector> pts;
  pts.reserve(face.size());
  for (auto i : face) pts.push_back(vertices[i]);
  const Polytope f = Polytope::from_extreme(n, std::move(pts));
  const std::size_t k = f.hull().dim;
  if (face.size() == k + 1) {
    out.push_back(face);
    return;
  }
  std::size_t apex_local = 0;
  for (std::size_t j = 1; j < face.size(); ++j) {
    if (priority[face[j]] < priority[face[apex_local]]) apex_local = j;
  }
  for (const auto& rec : f.hull().facets) {
    if (std::binary_search(rec.incident.begin(), rec.incident.end(), apex_local)) continue;
    std::vector<std::size_t> sub;
    sub.reserve(rec.incident.size());
    for (auto j : rec.incident) sub.push_back(face[j]);
    const std::size_t before = out.size();
    pull(vertices, n, sub, priority, out);
    for (std::size_t t = before; t < out.size(); ++t) {
      auto& s = out[t];
      s.insert(std::upper_bound(s.begin(), s.end(), face[apex_local]), face[apex_local]);
    }
  }
}

}  // namespace detail

/// Pulling triangulation with the given vertex priority (priority[i] ranks
/// P.vertices()[i]; lower pulls first): cone from the first vertex over the
/// recursively triangulated facets that do not contain it.
inline Triangulation triangulate_pulling(const Polytope& p, std::span<const std::size_t> priority) {
  if (p.is_empty()) throw GeometryError("triangulate: empty polytope");
  if (priority.size() != p.size()) throw GeometryError("triangulate: priority size mismatch");
  std::vector<std::size_t> all(p.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::vector<std::size_t>> cells;
  detail::pull(p.vertices(), p.ambient_dim(), all, priority, cells);
  Triangulation t;
  t.dim = dim(p);
  t.simplices.reserve(cells.size());
  for (const auto& c : cells) {
    std::vector<Vector> pts;
    for (auto i : c) pts.push_back(p.vertices()[i]);
    t.simplices.emplace_back(p.ambient_dim(), std::move(pts));
  }
  std::sort(t.simplices.begin(), t.simplices.end());
  return t;
}

/// Pulling triangulation in lexicographic vertex order.
inline Triangulation triangulate(const Polytope& p) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return triangulate_pulling(p, order);
}

inline Scalar volume(const Polytope& p) {
  if (p.is_empty() || dim(p) < p.ambient_dim()) return Scalar(0);
  Scalar v;
  for (const auto& s : triangulate(p).simplices) v += simplex_volume(s);
  return v;
}

/// Vertex-index lists of each simplex against the parent's canonical vertex order.
inline std::vector<std::vector<std::size_t>> vertex_indices(const Triangulation& t, const Polytope& parent) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : t.simplices) {
    std::vector<std::size_t> idx;
    for (const auto& v : s.vertices()) {
      auto it = std::lower_bound(parent.vertices().begin(), parent.vertices().end(), v);
      if (it == parent.vertices().end() || *it != v) throw GeometryError("simplex vertex is not a parent vertex");
      idx.push_back(static_cast<std::size_t>(it - parent.vertices().begin()));
    }
    out.push_back(std::move(idx));
  }
  return out;
}

/// First pair (i, j) whose intersection is not the common face spanned by
/// their shared vertices, or nullopt when the cells form a simplicial complex.
inline std::optional<std::pair<std::size_t, std::size_t>> verify_complex(const Triangulation& t) {
  for (std::size_t i = 0; i < t.simplices.size(); ++i) {
    for (std::size_t j = i + 1; j < t.simplices.size(); ++j) {
      const auto& a = t.simplices[i];
      const auto& b = t.simplices[j];
      std::vector<Vector> common;
      std::set_intersection(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end(),
                            std::back_inserter(common));
      const Polytope expected = Polytope::from_extreme(a.ambient_dim(), std::move(common));
      Polytope actual(a.ambient_dim());
      try {
        actual = intersect(a.polytope(), b.polytope());
      } catch (const GeometryError&) {
        return std::make_pair(i, j);
      }
      if (actual != expected) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

/// Replaces each base simplex T' by [0, T'].
inline Triangulation cone_over(const Triangulation& base) {
  Triangulation t;
  t.dim = base.dim + 1;
  for (const auto& s : base.simplices) {
    std::vector<Vector> pts = s.vertices();
    pts.push_back(Vector(s.ambient_dim()));
    if (affine_rank(pts) != s.dim() + 1) {
      throw GeometryError("cone_over: origin lies in the affine hull of a base simplex");
    }
    t.simplices.emplace_back(s.ambient_dim(), std::move(pts));
  }
  std::sort(t.simplices.begin(), t.simplices.end());
  return t;
}

}  // namespace slval
