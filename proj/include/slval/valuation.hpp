#pragma once

// The five SL(n)-invariant basis valuations, their combination
//
//   Psi(P) = c0 V0(P) + c0' (-1)^{dim P} 1_{relint P}(0) + psi(Vn(P))
//            + d0 1_P(0) + phi(Vn([0,P])),
//
// and inclusion-exclusion over finite unions.

#include <array>
#include <bit>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "slval/error.hpp"
#include "slval/exactnum.hpp"
#include "slval/polytope.hpp"
#include "slval/triangulate.hpp"

namespace slval {

using ValuationFn = std::function<Scalar(const Polytope&)>;

inline Scalar euler_char(const Polytope& p) { return p.is_empty() ? Scalar(0) : Scalar(1); }

inline Scalar relint_sign(const Polytope& p) {
  if (!relint_contains_origin(p)) return Scalar(0);
  return dim(p) % 2 == 0 ? Scalar(1) : Scalar(-1);
}

inline Scalar origin_indicator(const Polytope& p) {
  if (p.is_empty()) return Scalar(0);
  return contains(p, origin(p.ambient_dim())) ? Scalar(1) : Scalar(0);
}

/// Vn([0,P]); 0 for the empty polytope.
inline Scalar cone_volume(const Polytope& p) {
  if (p.is_empty()) return Scalar(0);
  return volume(cone_hull(p));
}

enum class Basis : std::size_t { euler_char, relint_sign, volume, origin_indicator, cone_volume };

inline constexpr std::array<Basis, 5> kBasis = {Basis::euler_char, Basis::relint_sign, Basis::volume,
                                                Basis::origin_indicator, Basis::cone_volume};

inline std::string_view basis_name(Basis b) {
  switch (b) {
    case Basis::euler_char: return "euler_char";
    case Basis::relint_sign: return "relint_sign";
    case Basis::volume: return "volume";
    case Basis::origin_indicator: return "origin_indicator";
    case Basis::cone_volume: return "cone_volume";
  }
  return "?";
}

inline Scalar basis_value(Basis b, const Polytope& p) {
  switch (b) {
    case Basis::euler_char: return euler_char(p);
    case Basis::relint_sign: return relint_sign(p);
    case Basis::volume: return volume(p);
    case Basis::origin_indicator: return origin_indicator(p);
    case Basis::cone_volume: return cone_volume(p);
  }
  return Scalar(0);
}

inline ValuationFn basis_fn(Basis b) {
  return [b](const Polytope& p) { return basis_value(b, p); };
}

/// (V0, relint sign, Vn, 1_P(0), Vn([0,P])) in one pass.
inline std::array<Scalar, 5> basis_values(const Polytope& p) {
  if (p.is_empty()) return {};
  return {euler_char(p), relint_sign(p), volume(p), origin_indicator(p), cone_volume(p)};
}

/// Coefficients of a general SL(n)-invariant valuation. The measurable case
/// (cn Vn + dn Vn([0,P])) is psi = linear(cn), phi = linear(dn).
struct ClassifiedValuation {
  Scalar c0;
  Scalar c0p;
  Scalar d0;
  CauchySolution psi;
  CauchySolution phi;

  static ClassifiedValuation measurable(Scalar c0, Scalar c0p, Scalar cn, Scalar d0, Scalar dn) {
    return {std::move(c0), std::move(c0p), std::move(d0), CauchySolution::linear(std::move(cn)),
            CauchySolution::linear(std::move(dn))};
  }

  friend bool operator==(const ClassifiedValuation&, const ClassifiedValuation&) = default;
};

inline Scalar evaluate(const ClassifiedValuation& val, const Polytope& p) {
  if (p.is_empty()) return Scalar(0);
  Scalar s;
  if (!val.c0.is_zero()) s += val.c0 * euler_char(p);
  if (!val.c0p.is_zero()) s += val.c0p * relint_sign(p);
  if (!val.psi.is_zero()) s += val.psi(volume(p));
  if (!val.d0.is_zero()) s += val.d0 * origin_indicator(p);
  if (!val.phi.is_zero()) s += val.phi(cone_volume(p));
  return s;
}

inline ValuationFn as_fn(ClassifiedValuation val) {
  return [v = std::move(val)](const Polytope& p) { return evaluate(v, p); };
}

inline constexpr std::size_t kMaxUnionParts = 12;

/// lattice[mask] = intersection of the parts selected by mask (mask >= 1).
/// Built incrementally; an empty intersection stays empty for every superset.
inline std::vector<Polytope> intersection_lattice(std::span<const Polytope> parts) {
  const std::size_t m = parts.size();
  if (m > kMaxUnionParts) throw GeometryError("inclusion-exclusion limited to 12 parts");
  if (m == 0) return {};
  const std::size_t n = parts.front().ambient_dim();
  std::vector<Polytope> lattice(std::size_t{1} << m, Polytope(n));
  for (std::size_t mask = 1; mask < lattice.size(); ++mask) {
    std::size_t high = 0;
    while ((mask >> (high + 1)) != 0) ++high;
    const std::size_t rest = mask & ~(std::size_t{1} << high);
    if (rest == 0) {
      lattice[mask] = parts[high];
      continue;
    }
    if (lattice[rest].is_empty()) continue;
    try {
      lattice[mask] = intersect(lattice[rest], parts[high]);
    } catch (const GeometryError& e) {
      std::vector<std::size_t> tuple;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask >> i & 1) tuple.push_back(i);
      }
      throw UnionError(std::move(tuple), e.what());
    }
  }
  return lattice;
}

/// Sum over nonempty index sets I of (-1)^{|I|-1} f(intersection of I).
inline Scalar inclusion_exclusion(std::span<const Polytope> lattice, const ValuationFn& f) {
  Scalar total;
  for (std::size_t mask = 1; mask < lattice.size(); ++mask) {
    if (lattice[mask].is_empty()) continue;  // f(empty) = 0
    const Scalar term = f(lattice[mask]);
    if (std::popcount(mask) % 2 == 1) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

inline Scalar evaluate_union(const ValuationFn& f, std::span<const Polytope> parts) {
  const auto lattice = intersection_lattice(parts);
  return inclusion_exclusion(lattice, f);
}

inline Scalar evaluate_union(const ClassifiedValuation& val, std::span<const Polytope> parts) {
  return evaluate_union(as_fn(val), parts);
}

inline std::vector<Polytope> cells(const Triangulation& t) {
  std::vector<Polytope> out;
  out.reserve(t.size());
  for (const auto& s : t.simplices) out.push_back(s.polytope());
  return out;
}

}  // namespace slval
