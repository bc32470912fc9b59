// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slval/slval.hpp"

using namespace slval;

namespace {

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

Vector v2(Scalar x, Scalar y) { return Vector{std::move(x), std::move(y)}; }

Polytope standard_simplex(std::size_t n) {
  std::vector<Vector> pts{Vector(n)};
  for (std::size_t i = 0; i < n; ++i) pts.push_back(Vector::unit(n, i));
  return from_points(n, pts);
}

ValuationFn rational_part_volume() {
  ClassifiedValuation rp;
  rp.psi = CauchySolution::rational_part();
  return as_fn(rp);
}

// Identity on 200 seeded splits per n for the given valuations.
void identity_sweep(Result& r, const std::vector<std::pair<std::string, ValuationFn>>& vals, long field_d,
                    std::size_t* degenerate_out = nullptr) {
  std::size_t degenerate = 0, total = 0;
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const SplitCase s = gen_split_case(seed, n, field_d);
      ++total;
      if (s.kind != SplitKind::generic) ++degenerate;
      for (const auto& [name, fn] : vals) {
        r.require(check_valuation_identity(fn, s).pass,
                  name + " n=" + std::to_string(n) + " seed=" + std::to_string(seed));
      }
    }
  }
  r.require(4 * degenerate >= total, "degenerate share below 25%");
  if (degenerate_out) *degenerate_out = degenerate;
  r.detail << total << " splits, " << degenerate << " degenerate";
}

void invariance_sweep(Result& r, const ValuationFn& fn, long field_d) {
  std::size_t total = 0;
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Polytope p = gen_invariance_case(seed, n, field_d);
      const Matrix a = gen_sl_matrix(seed, n);
      r.require(check_sl_invariance(fn, p, a).pass, "n=" + std::to_string(n) + " seed=" + std::to_string(seed));
      ++total;
    }
  }
  r.detail << total << " (P, A) pairs";
}

Result criterion1() {
  Result r;
  std::vector<std::pair<std::string, ValuationFn>> vals;
  for (auto b : kBasis) vals.emplace_back(std::string(basis_name(b)), basis_fn(b));
  identity_sweep(r, vals, 0);
  r.detail << " x 5 basis valuations";
  return r;
}

Result criterion2() {
  Result r;
  std::map<OriginCase, std::size_t> seen;
  std::size_t drop_cases_ok = 0;
  const ValuationFn rel = basis_fn(Basis::relint_sign);
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 200; seed += 4) {
      const SplitCase s = gen_split_case(seed, n);
      const OriginCase c = classify_origin_case(s);
      ++seen[c];
      r.require(check_valuation_identity(rel, s).pass, "relint_sign seed=" + std::to_string(seed));
      if (c == OriginCase::neither_union_relint) {
        const bool drop = dim(s.whole) == dim(s.meet) + 1;
        r.require(drop, "dimension drop missing at seed " + std::to_string(seed));
        if (drop) ++drop_cases_ok;
      }
    }
  }
  r.require(seen.size() == 5, "not all five origin cases produced");
  for (const auto& [c, k] : seen) r.detail << origin_case_name(c) << "=" << k << " ";
  r.detail << "(dimension-drop instances " << drop_cases_ok << ")";
  return r;
}

Result criterion3() {
  Result r;
  invariance_sweep(r, as_fn(ClassifiedValuation::measurable(1, 2, 3, 4, 5)), 0);
  r.detail << ", coefficients (1,2,3,4,5), 1..8 shears";
  return r;
}

Result criterion4() {
  Result r;
  for (std::size_t n = 2; n <= kMaxDimension; ++n) {
    const Scalar d = det(probe_matrix(n));
    r.require(!d.is_zero(), "probe matrix singular for n=" + std::to_string(n));
    r.detail << "det(n=" << n << ")=" << d << " ";
  }
  std::size_t fits = 0;
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto c = gen_coefficients(seed + 1000 * n);
      const auto fit =
          fit_classification(as_fn(ClassifiedValuation::measurable(c[0], c[1], c[2], c[3], c[4])), n, seed, 100);
      r.require(fit.coefficients == c && fit.exact() && fit.validation_count == 100,
                "n=" + std::to_string(n) + " tuple seed=" + std::to_string(seed));
      ++fits;
    }
  }
  r.detail << "; " << fits << " tuples recovered, residual 0 over 100 validation polytopes each";
  return r;
}

Result criterion5() {
  Result r;
  std::size_t total = 0;
  for (std::size_t n : {2u, 3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Simplex t = gen_origin_simplex(seed, n);
      const auto o = check_simplex_normalization(t);
      r.require(o.pass, "n=" + std::to_string(n) + " seed=" + std::to_string(seed));
      ++total;
    }
  }
  r.detail << total << " simplices in T^n (n=2,3,4), volume and SL(n) map to the normal form checked";
  return r;
}

Result criterion6() {
  Result r;
  std::size_t total = 0;
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      r.require(check_cone_decomposition(gen_cone_case(seed, n)).pass,
                "n=" + std::to_string(n) + " seed=" + std::to_string(seed));
      ++total;
    }
  }
  const auto tri = check_cone_decomposition(from_points(2, {v2(1, 0), v2(2, 0), v2(1, 1)}));
  r.require(tri.pass && tri.cone_volume == Scalar(1) && volume(from_points(2, {v2(1, 0), v2(2, 0), v2(1, 1)})) ==
                                                            Scalar::fraction(1, 2),
            "triangle worked value");
  const Polytope sq = from_points(2, {v2(1, 1), v2(2, 1), v2(1, 2), v2(2, 2)});
  const auto s = check_cone_decomposition(sq);
  Scalar parts = volume(sq);
  for (const auto& f : visible_facets(sq)) parts += volume(cone_hull(f.face));
  r.require(s.pass && s.cone_volume == Scalar(2) && s.visible_count == 2 && parts == Scalar(2),
            "square worked value");
  r.detail << total << " polytopes; triangle 1 = 1/2 + 1/2, square 2 = 1 + 1/2 + 1/2";
  return r;
}

Result criterion7() {
  Result r;
  std::size_t total = 0, cells = 0;
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto [p, tt] = gen_additivity_case(seed, n);
      r.require(tt.first.simplices != tt.second.simplices, "triangulations not distinct");
      const auto o = check_finite_additivity(p, tt.first, tt.second);
      r.require(o.pass, "n=" + std::to_string(n) + " seed=" + std::to_string(seed));
      cells += tt.first.size() + tt.second.size();
      ++total;
    }
  }
  r.detail << total << " polytopes x 2 distinct triangulations (" << cells << " cells), 5 basis valuations";
  return r;
}

Result criterion8() {
  Result r;
  const std::vector<Scalar> s{1, Scalar::fraction(1, 2), Scalar::fraction(1, 4), Scalar::fraction(1, 8)};
  const auto a = usc_sequences(1, 0, s);
  bool first_const = true, second_const = true;
  for (const auto& v : a.first.values) first_const = first_const && v == Scalar(-1);
  for (const auto& v : a.second.values) second_const = second_const && v == Scalar(1);
  r.require(first_const && a.first.limit_value == Scalar(1) && !a.first.violation, "sequence one for c0p=1");
  r.require(second_const && a.second.limit_value == Scalar(-1) && a.second.violation, "sequence two for c0p=1");
  // The mirror coefficient trips the other sequence, so only c0' = 0 survives both.
  const auto m = usc_sequences(-1, 0, s);
  r.require(m.first.violation && !m.second.violation, "c0p=-1 should violate sequence one");
  const auto b = usc_sequences(0, 1, s);
  r.require(!b.violated(), "c0p=0, d0=1 reported a violation");
  r.detail << "c0p=1: -1 vs +1 (consistent), +1 vs -1 (violation); c0p=-1 violates sequence one; c0p=0,d0=1 clean";
  return r;
}

Result criterion9() {
  Result r;
  const ValuationFn rp = rational_part_volume();
  identity_sweep(r, {{"rational_part_volume", rp}}, 2);
  r.detail << " over Q(sqrt2); ";
  invariance_sweep(r, rp, 2);
  const Scalar root2 = Scalar::root(2);
  const Polytope rect = from_points(2, {v2(0, 0), v2(root2, 0), v2(0, 1), v2(root2, 1)});
  const Polytope unit = from_points(2, {v2(0, 0), v2(1, 0), v2(0, 1), v2(1, 1)});
  r.require(volume(rect) == root2, "volume of [0,sqrt2]x[0,1]");
  r.require(rp(rect) == Scalar(0), "value on [0,sqrt2]x[0,1]");
  r.require(root2 * rp(unit) == root2, "sqrt2 * value on unit square");
  r.require(rp(rect) != root2 * rp(unit), "linearity should fail");
  r.detail << "; value([0,sqrt2]x[0,1]) = " << rp(rect) << " but sqrt2 * value([0,1]^2) = " << root2 * rp(unit);
  return r;
}

Result criterion10() {
  Result r;
  for (std::size_t n : {2u, 3u, 4u}) {
    r.require(volume(standard_simplex(n)) == Scalar(1) / factorial(n), "1/n! for n=" + std::to_string(n));
  }
  std::size_t total = 0;
  for (std::size_t n : {2u, 3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      GenOptions o;
      o.n = n;
      o.max_vertices = n + 4;
      o.family = kFamilies[seed % kFamilies.size()];
      const Polytope p = gen_polytope(seed, o);
      const Triangulation t = triangulate(p);
      Scalar sum;
      for (const auto& s : t.simplices) sum += simplex_volume(s);
      r.require(sum == volume(p), "additivity n=" + std::to_string(n) + " seed=" + std::to_string(seed));
      if (auto alt = alternative_triangulation(p, t)) {
        Scalar alt_sum;
        for (const auto& s : alt->simplices) alt_sum += simplex_volume(s);
        r.require(alt_sum == sum, "alternative triangulation volume");
      }
      ++total;
    }
  }
  r.detail << "1/2, 1/6, 1/24; additivity over " << total << " polytopes and their alternative triangulations";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"valuation identity on seeded splits", criterion1},
      {"five origin cases covered", criterion2},
      {"SL(n) invariance", criterion3},
      {"classification fit round trip", criterion4},
      {"simplex normalization", criterion5},
      {"cone decomposition", criterion6},
      {"finite additivity", criterion7},
      {"upper semicontinuity counterexample", criterion8},
      {"rational-part valuation is not linear", criterion9},
      {"volume correctness", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu: %s  %s [%s] (%.1fs)\n", i + 1, r.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                r.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
