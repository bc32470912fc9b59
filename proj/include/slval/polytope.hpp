#pragma once

// Convex polytopes in V-representation. The H-representation (facets and the
// equations of the affine hull) is derived exactly by brute-force enumeration
// and cached alongside the canonical vertex list.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "slval/error.hpp"
#include "slval/exactnum.hpp"
#include "slval/linalg.hpp"

namespace slval {

/// Closed halfspace {x : <normal, x> <= offset}.
class Halfspace {
 public:
  Halfspace(Vector normal, Scalar offset) : normal_(std::move(normal)), offset_(std::move(offset)) {
    if (normal_.is_zero()) throw GeometryError("halfspace with zero normal");
  }

  const Vector& normal() const noexcept { return normal_; }
  const Scalar& offset() const noexcept { return offset_; }

  Scalar slack(const Vector& x) const { return dot(normal_, x) - offset_; }
  bool contains(const Vector& x) const { return slack(x).sign() <= 0; }

  /// The closed halfspace on the other side of the same hyperplane.
  Halfspace complement() const { return {-normal_, -offset_}; }

  friend bool operator==(const Halfspace&, const Halfspace&) = default;

 private:
  Vector normal_;
  Scalar offset_;
};

namespace detail {

struct FacetRecord {
  Vector normal;  // ambient coordinates; zero outside the chart's pivot coordinates
  Scalar offset;
  std::vector<std::size_t> incident;  // sorted point indices on the facet
};

struct HullData {
  std::size_t dim = 0;
  // Ambient coordinates onto which the affine hull projects injectively.
  std::vector<std::size_t> pivots;
  // aff = {x : <equations[i], x> = equation_offsets[i]}.
  std::vector<Vector> equations;
  std::vector<Scalar> equation_offsets;
  std::vector<FacetRecord> facets;
  std::vector<bool> extreme;
};

// Orthogonal vector to the k-1 rows of a (k-1) x k matrix (generalized cross product).
inline Vector generalized_cross(const Matrix& rows) {
  const std::size_t k = rows.cols();
  Vector u(k);
  for (std::size_t c = 0; c < k; ++c) {
    Matrix minor(k - 1, k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      for (std::size_t j = 0, jj = 0; j < k; ++j) {
        if (j == c) continue;
        minor(i, jj++) = rows(i, j);
      }
    }
    const Scalar m = det(minor);
    u[c] = (c % 2 == 0) ? m : -m;
  }
  return u;
}

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Scale so that the first nonzero coordinate has absolute value 1.
inline void normalize(Vector& u, Scalar& c) {
  for (const Scalar& x : u) {
    if (x.is_zero()) continue;
    const Scalar s = abs(x);
    if (s == Scalar(1)) return;
    for (std::size_t i = 0; i < u.size(); ++i) u[i] /= s;
    c /= s;
    return;
  }
}

/// Affine hull, facets and extreme points of a finite set of distinct points.
inline HullData compute_hull(std::span<const Vector> pts) {
  HullData h;
  const std::size_t m = pts.size();
  if (m == 0) throw GeometryError("hull of an empty point set");
  const std::size_t n = pts.front().size();
  h.extreme.assign(m, false);

  if (m == 1) {
    h.extreme[0] = true;
    for (std::size_t i = 0; i < n; ++i) {
      h.equations.push_back(Vector::unit(n, i));
      h.equation_offsets.push_back(pts[0][i]);
    }
    return h;
  }

  Matrix diffs(m - 1, n);
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) diffs(i - 1, j) = pts[i][j] - pts[0][j];
  }
  h.pivots = detail::rref(diffs, n);
  h.dim = h.pivots.size();
  {
    std::vector<bool> is_pivot(n, false);
    for (auto p : h.pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < n; ++f) {
      if (is_pivot[f]) continue;
      Vector w(n);
      w[f] = 1;
      for (std::size_t r = 0; r < h.pivots.size(); ++r) w[h.pivots[r]] = -diffs(r, f);
      h.equation_offsets.push_back(dot(w, pts[0]));
      h.equations.push_back(std::move(w));
    }
  }
  const std::size_t k = h.dim;
  if (k == 0) {
    h.extreme[0] = true;
    return h;
  }

  std::vector<Vector> q(m, Vector(k));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) q[i][j] = pts[i][h.pivots[j]];
  }

  auto lift = [&](const Vector& u) {
    Vector w(n);
    for (std::size_t j = 0; j < k; ++j) w[h.pivots[j]] = u[j];
    return w;
  };

  if (k == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (q[i][0] < q[lo][0]) lo = i;
      if (q[i][0] > q[hi][0]) hi = i;
    }
    h.extreme[lo] = h.extreme[hi] = true;
    h.facets.push_back({lift(Vector{Scalar(-1)}), -q[lo][0], {lo}});
    h.facets.push_back({lift(Vector{Scalar(1)}), q[hi][0], {hi}});
    std::sort(h.facets.begin(), h.facets.end(),
              [](const FacetRecord& a, const FacetRecord& b) { return a.incident < b.incident; });
    return h;
  }

  if (m < k + 1) throw GeometryError("internal: too few points for the hull dimension");
  std::vector<std::vector<char>> member;  // member[f][i]: point i lies on facet f
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  Matrix rows(k - 1, k);
  std::vector<int> side(m);
  do {
    // k independent points on a known facet span exactly that facet.
    bool known = false;
    for (const auto& mem : member) {
      if (std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return mem[i] != 0; })) {
        known = true;
        break;
      }
    }
    if (known) continue;
    for (std::size_t t = 1; t < k; ++t) {
      for (std::size_t j = 0; j < k; ++j) rows(t - 1, j) = q[idx[t]][j] - q[idx[0]][j];
    }
    Vector u = generalized_cross(rows);
    if (u.is_zero()) continue;
    Scalar c = dot(u, q[idx[0]]);
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < m && !(pos && neg); ++i) {
      side[i] = (dot(u, q[i]) - c).sign();
      pos = pos || side[i] > 0;
      neg = neg || side[i] < 0;
    }
    if (pos && neg) continue;
    if (pos) {
      u = -u;
      c = -c;
    }
    FacetRecord f;
    std::vector<char> mem(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (side[i] == 0) {
        f.incident.push_back(i);
        mem[i] = 1;
      }
    }
    normalize(u, c);
    f.normal = lift(u);
    f.offset = std::move(c);
    h.facets.push_back(std::move(f));
    member.push_back(std::move(mem));
  } while (next_combination(idx, m));

  std::sort(h.facets.begin(), h.facets.end(),
            [](const FacetRecord& a, const FacetRecord& b) { return a.incident < b.incident; });

  // A point is extreme iff the facets through it meet in that point alone.
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> common;
    bool any = false;
    for (const auto& f : h.facets) {
      if (!std::binary_search(f.incident.begin(), f.incident.end(), i)) continue;
      if (!any) {
        common = f.incident;
        any = true;
      } else {
        std::vector<std::size_t> next;
        std::set_intersection(common.begin(), common.end(), f.incident.begin(), f.incident.end(),
                              std::back_inserter(next));
        common = std::move(next);
      }
      if (common.size() == 1) break;
    }
    h.extreme[i] = any && common.size() == 1;
  }
  return h;
}

}  // namespace detail

/// Convex polytope stored by its extreme points, deduplicated and sorted
/// lexicographically, so structural and geometric equality coincide. The
/// empty polytope has no vertices but keeps its ambient dimension.
class Polytope {
 public:
  Polytope() = default;
  explicit Polytope(std::size_t ambient_dim) : n_(ambient_dim) {}

  std::size_t ambient_dim() const noexcept { return n_; }
  const std::vector<Vector>& vertices() const noexcept { return v_; }
  std::size_t size() const noexcept { return v_.size(); }
  bool is_empty() const noexcept { return v_.empty(); }

  const detail::HullData& hull() const {
    if (!hull_) throw GeometryError("hull data of the empty polytope");
    return *hull_;
  }

  /// Trusted constructor: every point must already be extreme in the hull of
  /// the list (used for images under invertible maps and for faces).
  static Polytope from_extreme(std::size_t n, std::vector<Vector> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    Polytope p(n);
    if (points.empty()) return p;
    auto h = std::make_shared<detail::HullData>(detail::compute_hull(points));
    p.v_ = std::move(points);
    p.hull_ = std::move(h);
    return p;
  }

  friend bool operator==(const Polytope& a, const Polytope& b) { return a.n_ == b.n_ && a.v_ == b.v_; }

 private:
  friend Polytope from_points(std::size_t n, std::vector<Vector> points);

  std::size_t n_ = 0;
  std::vector<Vector> v_;
  std::shared_ptr<const detail::HullData> hull_;
};

/// Convex hull of `points` in R^n, reduced to its extreme points.
inline Polytope from_points(std::size_t n, std::vector<Vector> points) {
  for (const auto& p : points) {
    if (p.size() != n) throw GeometryError("from_points: mixed ambient dimensions");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Polytope out(n);
  if (points.empty()) return out;
  auto h = detail::compute_hull(points);
  if (std::all_of(h.extreme.begin(), h.extreme.end(), [](bool e) { return e; })) {
    out.v_ = std::move(points);
    out.hull_ = std::make_shared<detail::HullData>(std::move(h));
    return out;
  }
  std::vector<Vector> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (h.extreme[i]) kept.push_back(std::move(points[i]));
  }
  return Polytope::from_extreme(n, std::move(kept));
}

inline Polytope from_points(std::vector<Vector> points) {
  if (points.empty()) throw GeometryError("from_points: empty list without an ambient dimension");
  const std::size_t n = points.front().size();
  return from_points(n, std::move(points));
}

inline std::size_t dim(const Polytope& p) {
  if (p.is_empty()) throw GeometryError("dimension of the empty polytope is undefined");
  return p.hull().dim;
}

inline bool in_affine_hull(const Polytope& p, const Vector& x) {
  if (p.is_empty()) return false;
  const auto& h = p.hull();
  for (std::size_t i = 0; i < h.equations.size(); ++i) {
    if (dot(h.equations[i], x) != h.equation_offsets[i]) return false;
  }
  return true;
}

inline bool contains(const Polytope& p, const Vector& x) {
  if (x.size() != p.ambient_dim()) throw GeometryError("contains: dimension mismatch");
  if (!in_affine_hull(p, x)) return false;
  for (const auto& f : p.hull().facets) {
    if ((dot(f.normal, x) - f.offset).sign() > 0) return false;
  }
  return true;
}

inline Vector origin(std::size_t n) { return Vector(n); }

/// 0 in relint P; for a single point, relint is the point itself.
inline bool relint_contains_origin(const Polytope& p) {
  if (p.is_empty()) return false;
  const Vector zero = origin(p.ambient_dim());
  if (!contains(p, zero)) return false;
  // <u, 0> = 0 <= c on P; strictness means c > 0.
  return std::all_of(p.hull().facets.begin(), p.hull().facets.end(),
                     [](const detail::FacetRecord& f) { return f.offset.sign() > 0; });
}

inline bool is_subset(const Polytope& a, const Polytope& b) {
  return std::all_of(a.vertices().begin(), a.vertices().end(), [&](const Vector& v) { return contains(b, v); });
}

struct Facet {
  Halfspace halfspace;  // valid on P, tight exactly on the facet within aff P
  Polytope face;
};

/// All (dim P - 1)-faces with their supporting halfspaces.
inline std::vector<Facet> facets(const Polytope& p) {
  if (p.is_empty() || dim(p) == 0) throw GeometryError("facets of a polytope of dimension < 1");
  std::vector<Facet> out;
  for (const auto& f : p.hull().facets) {
    std::vector<Vector> pts;
    pts.reserve(f.incident.size());
    for (auto i : f.incident) pts.push_back(p.vertices()[i]);
    out.push_back({Halfspace(f.normal, f.offset), Polytope::from_extreme(p.ambient_dim(), std::move(pts))});
  }
  return out;
}

namespace detail {

// Vertex pairs spanning an edge: pairs whose smallest common face has only them as vertices.
inline std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& h = p.hull();
  const std::size_t m = p.size();
  if (h.dim == 0) return out;
  if (h.dim == 1) {
    out.emplace_back(0, 1);
    return out;
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      std::vector<std::size_t> common;
      bool any = false;
      for (const auto& f : h.facets) {
        if (!std::binary_search(f.incident.begin(), f.incident.end(), a) ||
            !std::binary_search(f.incident.begin(), f.incident.end(), b)) {
          continue;
        }
        if (!any) {
          common = f.incident;
          any = true;
        } else {
          std::vector<std::size_t> next;
          std::set_intersection(common.begin(), common.end(), f.incident.begin(), f.incident.end(),
                                std::back_inserter(next));
          common = std::move(next);
        }
        if (common.size() == 2) break;
      }
      if (any && common.size() == 2) out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace detail

/// P intersected with H. New vertices come from edges crossing the boundary of H.
inline Polytope clip(const Polytope& p, const Halfspace& h) {
  if (h.normal().size() != p.ambient_dim()) throw GeometryError("clip: dimension mismatch");
  if (p.is_empty()) return p;
  const auto& v = p.vertices();
  std::vector<Scalar> s(v.size());
  std::vector<int> sg(v.size());
  bool any_out = false, any_in = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s[i] = h.slack(v[i]);
    sg[i] = s[i].sign();
    any_out = any_out || sg[i] > 0;
    any_in = any_in || sg[i] <= 0;
  }
  if (!any_out) return p;
  if (!any_in) return Polytope(p.ambient_dim());
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sg[i] <= 0) pts.push_back(v[i]);
  }
  for (auto [a, b] : detail::edges(p)) {
    if (sg[a] * sg[b] >= 0) continue;
    const Scalar t = s[a] / (s[a] - s[b]);
    pts.push_back(v[a] + t * (v[b] - v[a]));
  }
  return from_points(p.ambient_dim(), std::move(pts));
}

/// [0, P]: convex hull of the origin and P.
inline Polytope cone_hull(const Polytope& p) {
  if (p.is_empty()) throw GeometryError("cone_hull of the empty polytope");
  std::vector<Vector> pts = p.vertices();
  pts.push_back(origin(p.ambient_dim()));
  return from_points(p.ambient_dim(), std::move(pts));
}

/// Facets of a full-dimensional P whose supporting inequality <u,x> <= c has
/// c < 0. Facets on hyperplanes through the origin (c = 0) are not visible.
inline std::vector<Facet> visible_facets(const Polytope& p) {
  if (p.is_empty() || dim(p) != p.ambient_dim()) {
    throw GeometryError("visible_facets requires a full-dimensional polytope");
  }
  if (contains(p, origin(p.ambient_dim()))) throw GeometryError("visible_facets requires 0 outside P");
  std::vector<Facet> out;
  for (auto& f : facets(p)) {
    if (f.halfspace.offset().sign() < 0) out.push_back(std::move(f));
  }
  return out;
}

/// P intersected with Q; requires one affine hull to contain the other.
inline Polytope intersect(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw GeometryError("intersect: dimension mismatch");
  if (p.is_empty()) return p;
  if (q.is_empty()) return q;
  auto hull_contains = [](const Polytope& big, const Polytope& small) {
    return std::all_of(small.vertices().begin(), small.vertices().end(),
                       [&](const Vector& v) { return in_affine_hull(big, v); });
  };
  const Polytope* big = &p;
  const Polytope* small = &q;
  if (!hull_contains(*big, *small)) {
    std::swap(big, small);
    if (!hull_contains(*big, *small)) throw GeometryError("intersect: incomparable affine hulls");
  }
  Polytope r = *big;
  const auto& hs = small->hull();
  if (hs.dim < big->hull().dim) {
    for (std::size_t i = 0; i < hs.equations.size() && !r.is_empty(); ++i) {
      r = clip(r, Halfspace(hs.equations[i], hs.equation_offsets[i]));
      r = clip(r, Halfspace(-hs.equations[i], -hs.equation_offsets[i]));
    }
  }
  for (std::size_t i = 0; i < hs.facets.size() && !r.is_empty(); ++i) {
    r = clip(r, Halfspace(hs.facets[i].normal, hs.facets[i].offset));
  }
  return r;
}

/// Image A*P under an invertible linear map.
inline Polytope transform(const Matrix& a, const Polytope& p) {
  if (!a.is_square() || a.rows() != p.ambient_dim()) throw GeometryError("transform: dimension mismatch");
  if (det(a).is_zero()) throw GeometryError("transform: singular matrix");
  std::vector<Vector> pts;
  pts.reserve(p.size());
  for (const auto& v : p.vertices()) pts.push_back(a * v);
  return Polytope::from_extreme(p.ambient_dim(), std::move(pts));
}

inline Polytope translate(const Polytope& p, const Vector& t) {
  std::vector<Vector> pts;
  pts.reserve(p.size());
  for (const auto& v : p.vertices()) pts.push_back(v + t);
  return Polytope::from_extreme(p.ambient_dim(), std::move(pts));
}

inline std::ostream& operator<<(std::ostream& os, const Vector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

inline std::ostream& operator<<(std::ostream& os, const Polytope& p) {
  os << "conv{";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p.vertices()[i];
  return os << '}';
}

}  // namespace slval
