#pragma once

// Seeded generators and property checks: the valuation identity on
// certified convex unions, SL(n) invariance, recovery of the five
// classification coefficients, the visible-facet cone decomposition and the
// two semicontinuity test sequences.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slval/error.hpp"
#include "slval/exactnum.hpp"
#include "slval/linalg.hpp"
#include "slval/polytope.hpp"
#include "slval/triangulate.hpp"
#include "slval/valuation.hpp"

namespace slval {

inline constexpr std::size_t kMaxDimension = 4;

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return seed * 0x9E3779B97F4A7C15ull + salt * 0xBF58476D1CE4E5B9ull + 0x94D049BB133111EBull;
}

// ---------------------------------------------------------------------------
// Polytope generator

enum class Family { generic, contains_origin, origin_in_relint, avoids_origin, lower_dim };

inline constexpr std::array<Family, 5> kFamilies = {Family::generic, Family::contains_origin,
                                                    Family::origin_in_relint, Family::avoids_origin,
                                                    Family::lower_dim};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::generic: return "generic";
    case Family::contains_origin: return "contains_origin";
    case Family::origin_in_relint: return "origin_in_relint";
    case Family::avoids_origin: return "avoids_origin";
    case Family::lower_dim: return "lower_dim";
  }
  return "?";
}

struct GenOptions {
  std::size_t n = 2;
  std::size_t max_vertices = 8;
  std::int64_t coord_bound = 3;
  Family family = Family::generic;
  long field_d = 0;  // > 0: coordinates may carry a +-sqrt(d) term
};

namespace detail {

inline Scalar random_coord(SeededRng& rng, const GenOptions& o) {
  Scalar x(rng.uniform(-o.coord_bound, o.coord_bound));
  if (o.field_d > 0 && rng.uniform(0, 2) == 0) {
    x += rng.coin() ? Scalar::root(o.field_d) : -Scalar::root(o.field_d);
  }
  return x;
}

inline Vector random_point(SeededRng& rng, const GenOptions& o) {
  Vector v(o.n);
  for (std::size_t i = 0; i < o.n; ++i) v[i] = random_coord(rng, o);
  return v;
}

inline std::vector<Vector> cloud(SeededRng& rng, const GenOptions& o, std::size_t m) {
  std::vector<Vector> pts;
  pts.reserve(m);
  for (std::size_t i = 0; i < m; ++i) pts.push_back(random_point(rng, o));
  return pts;
}

inline bool full_dim(const Polytope& p) { return !p.is_empty() && dim(p) == p.ambient_dim(); }

inline std::optional<Polytope> try_family(SeededRng& rng, const GenOptions& o) {
  const std::size_t n = o.n;
  const Vector zero(n);
  const auto count = [&](std::size_t lo) {
    return static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(lo),
                                                static_cast<std::int64_t>(std::max(lo, o.max_vertices))));
  };
  switch (o.family) {
    case Family::generic: {
      Polytope p = from_points(n, cloud(rng, o, count(n + 1)));
      if (full_dim(p)) return p;
      return std::nullopt;
    }
    case Family::contains_origin: {
      auto pts = cloud(rng, o, count(n + 1));
      if (rng.coin()) pts[0] = zero;
      Polytope p = from_points(n, std::move(pts));
      if (full_dim(p) && contains(p, zero)) return p;
      return std::nullopt;
    }
    case Family::origin_in_relint: {
      const std::size_t m = count(n + 1);
      auto pts = cloud(rng, o, m);
      if (rng.coin()) {
        for (std::size_t i = 1; i < m; i += 2) pts[i] = -pts[i - 1];
      }
      Polytope p = from_points(n, std::move(pts));
      if (full_dim(p) && relint_contains_origin(p)) return p;
      return std::nullopt;
    }
    case Family::avoids_origin: {
      auto pts = cloud(rng, o, count(n + 1));
      Vector shift(n);
      for (std::size_t i = 0; i < n; ++i) shift[i] = Scalar(rng.uniform(-2 * o.coord_bound, 2 * o.coord_bound));
      for (auto& v : pts) v = v + shift;
      Polytope p = from_points(n, std::move(pts));
      if (full_dim(p) && !contains(p, zero)) return p;
      return std::nullopt;
    }
    case Family::lower_dim: {
      const auto k = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
      const Vector base = rng.coin() ? zero : random_point(rng, o);
      std::vector<Vector> dirs;
      for (std::size_t j = 0; j < k; ++j) dirs.push_back(random_point(rng, o));
      const std::size_t m = count(k + 1);
      const bool symmetric = rng.coin();
      std::vector<Vector> pts;
      for (std::size_t i = 0; i < m; ++i) {
        // Symmetric clouds reflect every other point through the base point.
        if (symmetric && i % 2 == 1) {
          pts.push_back(base + base - pts.back());
          continue;
        }
        Vector x = base;
        for (std::size_t j = 0; j < k; ++j) x = x + Scalar(rng.uniform(-o.coord_bound, o.coord_bound)) * dirs[j];
        pts.push_back(std::move(x));
      }
      Polytope p = from_points(n, std::move(pts));
      if (dim(p) < n) return p;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Deterministic-in-seed polytope from the requested family (rejection
/// sampling, bounded retries).
inline Polytope gen_polytope(std::uint64_t seed, const GenOptions& o) {
  if (o.n < 2 || o.n > kMaxDimension) throw GeometryError("gen_polytope: n out of range");
  if (o.max_vertices > 12) throw GeometryError("gen_polytope: at most 12 vertices");
  if (o.coord_bound < 1) throw GeometryError("gen_polytope: coord_bound must be positive");
  SeededRng rng(seed, 0x504f4c59ull + static_cast<std::uint64_t>(o.family));
  for (int attempt = 0; attempt < 2000; ++attempt) {
    if (auto p = detail::try_family(rng, o)) return *std::move(p);
  }
  throw GeometryError("gen_polytope: family " + std::string(family_name(o.family)) + " unsatisfiable");
}

// ---------------------------------------------------------------------------
// Certified convex unions

/// How the two pieces were cut from the whole. Every kind yields P u Q = R by
/// construction: left = R n {<u,x> <= c}, right = R n {<u,x> >= c - overlap}.
enum class SplitKind { generic, through_origin, overlap_one_sided, overlap_symmetric, inclusion };

inline std::string_view split_kind_name(SplitKind k) {
  switch (k) {
    case SplitKind::generic: return "generic";
    case SplitKind::through_origin: return "through_origin";
    case SplitKind::overlap_one_sided: return "overlap_one_sided";
    case SplitKind::overlap_symmetric: return "overlap_symmetric";
    case SplitKind::inclusion: return "inclusion";
  }
  return "?";
}

struct SplitCase {
  Polytope whole;
  Polytope left;
  Polytope right;
  Polytope meet;
  Halfspace hyperplane;  // left = whole n hyperplane
  Scalar overlap;        // 0 for a proper split; meet then lies on the boundary hyperplane
  SplitKind kind;

  friend bool operator==(const SplitCase&, const SplitCase&) = default;
};

namespace detail {

inline Vector relint_point(SeededRng& rng, const Polytope& r) {
  Vector p(r.ambient_dim());
  Scalar total;
  for (const auto& v : r.vertices()) {
    const Scalar w(rng.uniform(1, 4));
    p = p + w * v;
    total += w;
  }
  return (Scalar(1) / total) * p;
}

}  // namespace detail

/// Seeded split of R. One seed in four cuts along a hyperplane through the
/// origin (also used, shifted, for the overlapping and nested variants);
/// the others cut through two random relative-interior points.
inline SplitCase gen_split(std::uint64_t seed, const Polytope& r) {
  if (r.is_empty() || dim(r) < 1) throw GeometryError("gen_split requires dim(R) >= 1");
  const std::size_t n = r.ambient_dim();
  SeededRng rng(seed, 0x53504c54ull);
  static constexpr std::array<SplitKind, 4> kDegenerate = {SplitKind::through_origin, SplitKind::overlap_one_sided,
                                                           SplitKind::overlap_symmetric, SplitKind::inclusion};
  const SplitKind kind = seed % 4 == 0 ? kDegenerate[(seed / 4) % 4] : SplitKind::generic;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Vector p = detail::relint_point(rng, r);
    Vector w = kind == SplitKind::generic ? detail::relint_point(rng, r) - p : p;
    if (kind != SplitKind::generic && attempt % 2 == 1) w = Vector(n);
    Vector u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = Scalar(rng.uniform(-3, 3));
    if (!w.is_zero()) u = u - (dot(u, w) / dot(w, w)) * w;
    if (u.is_zero()) continue;
    const Scalar c = kind == SplitKind::generic ? dot(u, p) : Scalar(0);
    Scalar lo = dot(u, r.vertices().front());
    Scalar hi = lo;
    for (const auto& v : r.vertices()) {
      const Scalar s = dot(u, v);
      if (s < lo) lo = s;
      if (s > hi) hi = s;
    }
    if (!(lo < c && c < hi)) continue;
    Scalar left_offset = c;
    Scalar overlap(0);
    switch (kind) {
      case SplitKind::generic:
      case SplitKind::through_origin: break;
      case SplitKind::overlap_one_sided:
        left_offset = hi / Scalar(2);
        overlap = left_offset;
        break;
      case SplitKind::overlap_symmetric:
        left_offset = hi / Scalar(2);
        overlap = left_offset - lo / Scalar(2);
        break;
      case SplitKind::inclusion:
        left_offset = hi;
        overlap = hi;
        break;
    }
    Halfspace h(u, left_offset);
    Polytope left = clip(r, h);
    Polytope right = clip(r, Halfspace(-u, overlap - left_offset));
    if (left.is_empty() || right.is_empty() || dim(left) != dim(r) || dim(right) != dim(r)) continue;
    Polytope meet = intersect(left, right);
    return SplitCase{r, std::move(left), std::move(right), std::move(meet), std::move(h), std::move(overlap), kind};
  }
  throw GeometryError("gen_split: no proper split found");
}

/// The five mutually exclusive configurations of the origin relative to a
/// convex pair P, Q (checked in this order).
enum class OriginCase {
  inclusion,            // P in Q or Q in P
  both_relint,          // 0 in relint P and 0 in relint Q
  one_relint,           // exactly one of them
  neither_union_not,    // neither, and 0 not in relint(P u Q)
  neither_union_relint  // neither, but 0 in relint(P u Q): dim(P u Q) = dim(P n Q) + 1
};

inline std::string_view origin_case_name(OriginCase c) {
  switch (c) {
    case OriginCase::inclusion: return "inclusion";
    case OriginCase::both_relint: return "both_relint";
    case OriginCase::one_relint: return "one_relint";
    case OriginCase::neither_union_not: return "neither_union_not";
    case OriginCase::neither_union_relint: return "neither_union_relint";
  }
  return "?";
}

inline OriginCase classify_origin_case(const SplitCase& s) {
  if (is_subset(s.left, s.right) || is_subset(s.right, s.left)) return OriginCase::inclusion;
  const bool in_p = relint_contains_origin(s.left);
  const bool in_q = relint_contains_origin(s.right);
  if (in_p && in_q) return OriginCase::both_relint;
  if (in_p || in_q) return OriginCase::one_relint;
  return relint_contains_origin(s.whole) ? OriginCase::neither_union_relint : OriginCase::neither_union_not;
}

struct IdentityOutcome {
  bool pass;
  Scalar left, right, whole, meet;
};

/// Psi(P) + Psi(Q) == Psi(P u Q) + Psi(P n Q), exactly.
inline IdentityOutcome check_valuation_identity(const ValuationFn& val, const SplitCase& s) {
  IdentityOutcome o{false, val(s.left), val(s.right), val(s.whole), val(s.meet)};
  o.pass = o.left + o.right == o.whole + o.meet;
  return o;
}

struct InvarianceOutcome {
  bool pass;
  Scalar before, after;
};

inline InvarianceOutcome check_sl_invariance(const ValuationFn& val, const Polytope& p, const Matrix& a) {
  if (!a.is_square() || a.rows() != p.ambient_dim()) throw GeometryError("check_sl_invariance: dimension mismatch");
  if (det(a) != Scalar(1)) throw GeometryError("check_sl_invariance: det(A) != 1");
  InvarianceOutcome o{false, val(p), val(transform(a, p))};
  o.pass = o.before == o.after;
  return o;
}

// ---------------------------------------------------------------------------
// Classification fit

struct FitReport {
  std::array<Scalar, 5> coefficients;  // c0, c0', cn, d0, dn
  std::array<Scalar, 5> probe_values;
  Scalar residual_max;
  std::size_t validation_count = 0;

  bool exact() const { return residual_max.is_zero(); }
};

/// {0}, {e1}, [-e1, e1], [0, e1, ..., en] and its e1-translate.
inline std::array<Polytope, 5> probe_polytopes(std::size_t n) {
  const Vector zero(n);
  const Vector e1 = Vector::unit(n, 0);
  std::vector<Vector> simplex{zero};
  for (std::size_t i = 0; i < n; ++i) simplex.push_back(Vector::unit(n, i));
  std::vector<Vector> shifted;
  for (const auto& v : simplex) shifted.push_back(v + e1);
  return {from_points(n, {zero}), from_points(n, {e1}), from_points(n, {-e1, e1}), from_points(n, simplex),
          from_points(n, shifted)};
}

inline Matrix probe_matrix(std::size_t n) {
  const auto probes = probe_polytopes(n);
  Matrix m(5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    const auto row = basis_values(probes[i]);
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = row[j];
  }
  return m;
}

/// Polytope `index` of the validation set used by fit_classification.
inline Polytope validation_polytope(std::uint64_t seed, std::size_t n, std::size_t index, long field_d = 0) {
  GenOptions o;
  o.n = n;
  o.max_vertices = n + 4;
  o.family = kFamilies[index % kFamilies.size()];
  o.field_d = field_d;
  return gen_polytope(derive_seed(seed, index), o);
}

/// Solves for the five measurable-case coefficients from the probe values and
/// measures the worst residual on a seeded validation set.
inline FitReport fit_classification(const ValuationFn& blackbox, std::size_t n, std::uint64_t seed = 0,
                                    std::size_t validation = 100, long field_d = 0) {
  if (n < 2 || n > kMaxDimension) throw GeometryError("fit_classification: n out of range");
  const auto probes = probe_polytopes(n);
  FitReport report;
  Vector rhs(5);
  for (std::size_t i = 0; i < 5; ++i) {
    report.probe_values[i] = blackbox(probes[i]);
    rhs[i] = report.probe_values[i];
  }
  const Vector coef = solve(probe_matrix(n), rhs);
  for (std::size_t i = 0; i < 5; ++i) report.coefficients[i] = coef[i];
  for (std::size_t i = 0; i < validation; ++i) {
    const Polytope p = validation_polytope(seed, n, i, field_d);
    const auto basis = basis_values(p);
    Scalar predicted;
    for (std::size_t j = 0; j < 5; ++j) predicted += coef[j] * basis[j];
    const Scalar r = abs(blackbox(p) - predicted);
    if (r > report.residual_max) report.residual_max = r;
  }
  report.validation_count = validation;
  return report;
}

// ---------------------------------------------------------------------------
// Cone decomposition

struct ConeOutcome {
  bool pass;
  Scalar cone_volume;         // Vn([0,P])
  Scalar decomposed;          // Vn(P) + sum over visible F of Vn([0,F])
  Scalar triangulated;        // same sum, with each [0,F] triangulated via cone_over
  std::size_t visible_count;
};

/// Vn([0,P]) = Vn(P) + sum of Vn([0,F]) over facets F visible from 0, for full
/// dimensional P not containing 0. For (n-1)-dimensional P with 0 outside
/// aff P the visible part is P itself, so Vn([0,P]) = Vn([0,P] \ P).
inline ConeOutcome check_cone_decomposition(const Polytope& p) {
  if (p.is_empty()) throw GeometryError("check_cone_decomposition: empty polytope");
  const std::size_t n = p.ambient_dim();
  const Vector zero(n);
  ConeOutcome o{false, cone_volume(p), Scalar(0), Scalar(0), 0};
  if (dim(p) == n) {
    if (contains(p, zero)) throw GeometryError("check_cone_decomposition: 0 in P");
    const auto visible = visible_facets(p);
    o.visible_count = visible.size();
    o.decomposed = volume(p);
    o.triangulated = o.decomposed;
    for (const auto& f : visible) {
      o.decomposed += volume(cone_hull(f.face));
      for (const auto& s : cone_over(triangulate(f.face)).simplices) o.triangulated += simplex_volume(s);
    }
  } else if (dim(p) + 1 == n) {
    if (in_affine_hull(p, zero)) throw GeometryError("check_cone_decomposition: 0 in aff P");
    o.visible_count = 1;
    for (const auto& s : cone_over(triangulate(p)).simplices) o.triangulated += simplex_volume(s);
    o.decomposed = o.triangulated;
  } else {
    throw GeometryError("check_cone_decomposition: dim P must be n or n - 1");
  }
  o.pass = o.cone_volume == o.decomposed && o.cone_volume == o.triangulated;
  return o;
}

// ---------------------------------------------------------------------------
// Upper semicontinuity along the two explicit sequences

struct UscSequence {
  std::string name;
  std::string limit_name;
  std::vector<Scalar> values;
  Scalar limit_value;
  bool constant = true;
  bool violation = false;  // sequence value exceeds the value at the limit
  std::string constraint;  // what u.s.c. along this sequence forces on c0'
};

struct UscReport {
  Scalar c0p, d0;
  std::vector<Scalar> s_values;
  UscSequence first, second;

  bool violated() const { return first.violation || second.violation; }
};

/// Phi(P) = c0' (-1)^{dim P} 1_{relint P}(0) + d0 1_P(0) along
/// [-s e1, s e1] -> {0} and [-s e1, s e1, -e2, e2] -> [-e2, e2].
inline UscReport usc_sequences(const Scalar& c0p, const Scalar& d0, const std::vector<Scalar>& s_values,
                               std::size_t n = 2) {
  if (n < 2) throw GeometryError("usc_sequences requires n >= 2");
  if (s_values.empty()) throw DomainError("usc_sequences: no s values");
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (s_values[i].sign() <= 0) throw DomainError("usc_sequences: s values must be positive");
    if (i > 0 && !(s_values[i] < s_values[i - 1])) throw DomainError("usc_sequences: s values must decrease");
  }
  const auto phi = [&](const Polytope& p) { return c0p * relint_sign(p) + d0 * origin_indicator(p); };
  const Vector e1 = Vector::unit(n, 0);
  const Vector e2 = Vector::unit(n, 1);

  UscReport rep{c0p, d0, s_values, {}, {}};
  rep.first.name = "[-s e1, s e1]";
  rep.first.limit_name = "{0}";
  rep.first.constraint = "c0p >= 0";
  rep.second.name = "[-s e1, s e1, -e2, e2]";
  rep.second.limit_name = "[-e2, e2]";
  rep.second.constraint = "c0p <= 0";
  for (const auto& s : s_values) {
    rep.first.values.push_back(phi(from_points(n, {-(s * e1), s * e1})));
    rep.second.values.push_back(phi(from_points(n, {-(s * e1), s * e1, -e2, e2})));
  }
  rep.first.limit_value = phi(from_points(n, {Vector(n)}));
  rep.second.limit_value = phi(from_points(n, {-e2, e2}));
  for (UscSequence* seq : {&rep.first, &rep.second}) {
    for (const auto& v : seq->values) seq->constant = seq->constant && v == seq->values.front();
    seq->violation = seq->values.back() > seq->limit_value;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Seed-driven workloads shared by the verify suite and the acceptance gate

/// Generates a polytope (family cycling with the seed) and splits it. The
/// split kind is taken from `seed` itself, so one seed in four is degenerate.
inline SplitCase gen_split_case(std::uint64_t seed, std::size_t n, long field_d = 0) {
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    GenOptions o;
    o.n = n;
    o.max_vertices = n + 4;
    o.family = kFamilies[(seed + attempt) % kFamilies.size()];
    o.field_d = field_d;
    const Polytope r = gen_polytope(derive_seed(seed, 0x1000 + attempt), o);
    if (dim(r) < 1) continue;
    try {
      return gen_split(seed, r);
    } catch (const GeometryError&) {
    }
  }
  throw GeometryError("gen_split_case: no splittable polytope for seed " + std::to_string(seed));
}

/// Product of 1..8 random shears (count chosen by the seed).
inline Matrix gen_sl_matrix(std::uint64_t seed, std::size_t n) {
  return random_sl_matrix(seed, n, 1 + static_cast<std::size_t>(seed % 8));
}

/// Random integer coefficient tuple (c0, c0', cn, d0, dn) in [-9, 9].
inline std::array<Scalar, 5> gen_coefficients(std::uint64_t seed) {
  SeededRng rng(seed, 0x434f4546ull);
  std::array<Scalar, 5> c;
  for (auto& x : c) x = Scalar(rng.uniform(-9, 9));
  return c;
}

/// n-simplex with one vertex at the origin and integer coordinates.
inline Simplex gen_origin_simplex(std::uint64_t seed, std::size_t n) {
  SeededRng rng(seed, 0x4f53494dull);
  GenOptions o;
  o.n = n;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vector> pts{Vector(n)};
    for (std::size_t i = 0; i < n; ++i) pts.push_back(detail::random_point(rng, o));
    if (affine_rank(pts) == n) return Simplex(n, std::move(pts));
  }
  throw GeometryError("gen_origin_simplex: retry budget exhausted");
}

struct NormalizationOutcome {
  bool pass;
  Scalar volume;             // Vn(T)
  Scalar normal_volume;      // Vn([0, e1, ..., e_{n-1}, n! Vn(T) en])
  Matrix map;                // A in SL(n) with A T = normal form
  bool map_ok;
};

/// Every T in T^n is an SL(n) image of [0, e1, ..., e_{n-1}, n! Vn(T) en].
/// Builds A = N M^{-1} from the edge matrices and checks det A = 1, A T = N
/// and that the volumes agree.
inline NormalizationOutcome check_simplex_normalization(const Simplex& t) {
  const std::size_t n = t.ambient_dim();
  if (t.dim() != n || !t.has_origin_vertex()) {
    throw GeometryError("check_simplex_normalization: need an n-simplex with a vertex at 0");
  }
  std::vector<Vector> edges;
  for (const auto& v : t.vertices()) {
    if (!v.is_zero()) edges.push_back(v);
  }
  Matrix m = Matrix::from_columns(edges, n);
  if (det(m).sign() < 0) {
    std::swap(edges[0], edges[1]);
    m = Matrix::from_columns(edges, n);
  }
  const Scalar vol = simplex_volume(t);
  std::vector<Vector> normal{Vector(n)};
  for (std::size_t i = 0; i + 1 < n; ++i) normal.push_back(Vector::unit(n, i));
  normal.push_back((factorial(n) * vol) * Vector::unit(n, n - 1));
  const Matrix target = Matrix::from_columns(std::span<const Vector>(normal).subspan(1), n);
  NormalizationOutcome o{false, vol, simplex_volume(Simplex(n, normal)), target * inverse(m), false};
  o.map_ok = det(o.map) == Scalar(1) && transform(o.map, t.polytope()) == from_points(n, normal);
  o.pass = o.map_ok && o.volume == o.normal_volume;
  return o;
}

/// A triangulation different from `first`, obtained by pulling from another
/// starting vertex; nullopt when every start reproduces `first`.
inline std::optional<Triangulation> alternative_triangulation(const Polytope& p, const Triangulation& first) {
  const std::size_t m = p.size();
  for (std::size_t start = m; start-- > 0;) {
    std::vector<std::size_t> priority(m);
    for (std::size_t i = 0; i < m; ++i) priority[i] = (i + m - start) % m;
    Triangulation t = triangulate_pulling(p, priority);
    if (t.simplices != first.simplices) return t;
  }
  return std::nullopt;
}

struct AdditivityOutcome {
  bool pass;
  Triangulation first, second;
  std::optional<std::pair<std::size_t, std::size_t>> bad_pair;  // verify_complex witness
  std::array<Scalar, 5> whole;
  std::array<Scalar, 5> union_first;
  std::array<Scalar, 5> union_second;
};

/// Inclusion-exclusion over the cells of two distinct triangulations of p
/// must reproduce each basis valuation of p.
inline AdditivityOutcome check_finite_additivity(const Polytope& p, const Triangulation& first,
                                                 const Triangulation& second) {
  AdditivityOutcome o{false, first, second, std::nullopt, basis_values(p), {}, {}};
  o.bad_pair = verify_complex(first);
  if (!o.bad_pair) o.bad_pair = verify_complex(second);
  const auto lat_a = intersection_lattice(cells(first));
  const auto lat_b = intersection_lattice(cells(second));
  o.pass = !o.bad_pair;
  for (std::size_t i = 0; i < kBasis.size(); ++i) {
    const ValuationFn f = basis_fn(kBasis[i]);
    o.union_first[i] = inclusion_exclusion(lat_a, f);
    o.union_second[i] = inclusion_exclusion(lat_b, f);
    o.pass = o.pass && o.union_first[i] == o.whole[i] && o.union_second[i] == o.whole[i];
  }
  return o;
}

/// Seeded polytope admitting two distinct triangulations with at most
/// kMaxUnionParts cells each.
inline std::pair<Polytope, std::pair<Triangulation, Triangulation>> gen_additivity_case(std::uint64_t seed,
                                                                                     std::size_t n) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    GenOptions o;
    o.n = n;
    o.max_vertices = n + 3;
    o.family = kFamilies[(seed + attempt) % kFamilies.size()];
    const Polytope p = gen_polytope(derive_seed(seed, 0x2000 + attempt), o);
    if (p.size() < 2) continue;
    Triangulation a = triangulate(p);
    if (a.size() > kMaxUnionParts) continue;
    auto b = alternative_triangulation(p, a);
    if (!b || b->size() > kMaxUnionParts) continue;
    return {p, {std::move(a), *std::move(b)}};
  }
  throw GeometryError("gen_additivity_case: no polytope with two small triangulations");
}

/// Full-dimensional polytope avoiding the origin.
inline Polytope gen_cone_case(std::uint64_t seed, std::size_t n) {
  GenOptions o;
  o.n = n;
  o.max_vertices = n + 4;
  o.family = Family::avoids_origin;
  return gen_polytope(derive_seed(seed, 0x3000), o);
}

/// Polytope for the SL(n) invariance check (families cycle with the seed).
inline Polytope gen_invariance_case(std::uint64_t seed, std::size_t n, long field_d = 0) {
  GenOptions o;
  o.n = n;
  o.max_vertices = n + 4;
  o.family = kFamilies[seed % kFamilies.size()];
  o.field_d = field_d;
  return gen_polytope(derive_seed(seed, 0x4000), o);
}

}  // namespace slval
