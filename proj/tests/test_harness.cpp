#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "slval/harness.hpp"
#include "slval/suite.hpp"

using slval::ClassifiedValuation;
using slval::Polytope;
using slval::Scalar;
using slval::Vector;

namespace {

Vector v2(Scalar x, Scalar y) { return Vector{std::move(x), std::move(y)}; }
Scalar q(long p, long r = 1) { return Scalar::fraction(p, r); }
Polytope pts2(std::vector<Vector> v) { return slval::from_points(2, std::move(v)); }
Polytope unit_square() { return pts2({v2(0, 0), v2(1, 0), v2(0, 1), v2(1, 1)}); }

slval::SplitCase manual_split(const Polytope& r, const slval::Halfspace& h) {
  Polytope left = slval::clip(r, h);
  Polytope right = slval::clip(r, h.complement());
  Polytope meet = slval::intersect(left, right);
  return {r, left, right, meet, h, Scalar(0), slval::SplitKind::generic};
}

}  // namespace

TEST(GenPolytope, FamilyContracts) {
  for (std::size_t n : {2u, 3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      for (auto f : slval::kFamilies) {
        slval::GenOptions o;
        o.n = n;
        o.family = f;
        const Polytope p = slval::gen_polytope(seed, o);
        EXPECT_EQ(p, slval::gen_polytope(seed, o));
        EXPECT_LE(p.size(), o.max_vertices);
        const Vector zero(n);
        switch (f) {
          case slval::Family::generic: EXPECT_EQ(slval::dim(p), n); break;
          case slval::Family::contains_origin: EXPECT_TRUE(slval::contains(p, zero)); break;
          case slval::Family::origin_in_relint: EXPECT_TRUE(slval::relint_contains_origin(p)); break;
          case slval::Family::avoids_origin: EXPECT_FALSE(slval::contains(p, zero)); break;
          case slval::Family::lower_dim: EXPECT_LT(slval::dim(p), n); break;
        }
      }
    }
  }
  slval::GenOptions bad;
  bad.max_vertices = 13;
  EXPECT_THROW(slval::gen_polytope(0, bad), slval::GeometryError);
  bad.max_vertices = 8;
  bad.n = 5;
  EXPECT_THROW(slval::gen_polytope(0, bad), slval::GeometryError);
}

TEST(GenSplit, Examples) {
  const auto s = manual_split(unit_square(), slval::Halfspace(v2(1, 0), q(1, 2)));
  EXPECT_EQ(slval::volume(s.left), q(1, 2));
  EXPECT_EQ(slval::volume(s.right), q(1, 2));
  EXPECT_EQ(s.meet, pts2({v2(q(1, 2), 0), v2(q(1, 2), 1)}));

  const Polytope seg = pts2({v2(-1, 0), v2(1, 0)});
  const auto d = manual_split(seg, slval::Halfspace(v2(1, 0), 0));
  EXPECT_EQ(d.left, pts2({v2(-1, 0), v2(0, 0)}));
  EXPECT_EQ(d.right, pts2({v2(0, 0), v2(1, 0)}));
  EXPECT_EQ(d.meet, pts2({v2(0, 0)}));
  EXPECT_EQ(slval::classify_origin_case(d), slval::OriginCase::neither_union_relint);

  // A seed selecting the degenerate family on [-e1, e1] also cuts at 0.
  const auto g = slval::gen_split(0, seg);
  EXPECT_EQ(g.kind, slval::SplitKind::through_origin);
  EXPECT_EQ(g.meet, pts2({v2(0, 0)}));

  EXPECT_THROW(slval::gen_split(1, pts2({v2(0, 0)})), slval::GeometryError);
}

TEST(GenSplit, CertificateInvariants) {
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const auto s = slval::gen_split_case(seed, n);
      EXPECT_EQ(s, slval::gen_split_case(seed, n)) << "determinism";
      EXPECT_EQ(slval::dim(s.left), slval::dim(s.whole));
      EXPECT_EQ(slval::dim(s.right), slval::dim(s.whole));
      EXPECT_EQ(s.left, slval::clip(s.whole, s.hyperplane));
      EXPECT_TRUE(slval::is_subset(s.left, s.whole));
      EXPECT_TRUE(slval::is_subset(s.right, s.whole));
      EXPECT_EQ(seed % 4 == 0, s.kind != slval::SplitKind::generic);
      // Every vertex of R lies in P or Q, so P u Q = R.
      for (const auto& v : s.whole.vertices()) {
        EXPECT_TRUE(slval::contains(s.left, v) || slval::contains(s.right, v));
      }
      if (s.overlap.is_zero()) {
        for (const auto& v : s.meet.vertices()) EXPECT_TRUE(s.hyperplane.slack(v).is_zero());
        if (slval::dim(s.whole) == n) {
          EXPECT_EQ(slval::volume(s.left) + slval::volume(s.right), slval::volume(s.whole));
        }
      }
    }
  }
}

TEST(GenSplit, DegenerateFamilyCoversAllFiveOriginCases) {
  std::set<slval::OriginCase> seen;
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 400; seed += 4) seen.insert(slval::classify_origin_case(slval::gen_split_case(seed, n)));
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(CheckValuationIdentity, Examples) {
  const Polytope seg = pts2({v2(-1, 0), v2(1, 0)});
  const auto d = manual_split(seg, slval::Halfspace(v2(1, 0), 0));
  const auto o = slval::check_valuation_identity(slval::basis_fn(slval::Basis::relint_sign), d);
  EXPECT_TRUE(o.pass);
  EXPECT_EQ(o.left, Scalar(0));
  EXPECT_EQ(o.right, Scalar(0));
  EXPECT_EQ(o.whole, Scalar(-1));
  EXPECT_EQ(o.meet, Scalar(1));

  const auto sq = manual_split(unit_square(), slval::Halfspace(v2(1, 0), q(1, 2)));
  const auto vol = slval::check_valuation_identity(slval::basis_fn(slval::Basis::volume), sq);
  EXPECT_TRUE(vol.pass);

  const slval::ValuationFn dimension = [](const Polytope& p) { return Scalar(slval::dim(p)); };
  const auto broken = slval::check_valuation_identity(dimension, d);
  EXPECT_FALSE(broken.pass);
  EXPECT_EQ(broken.left + broken.right, Scalar(2));
  EXPECT_EQ(broken.whole + broken.meet, Scalar(1));
}

TEST(CheckSlInvariance, Examples) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Polytope p = slval::gen_invariance_case(seed, 2);
    const auto a = slval::gen_sl_matrix(seed, 2);
    EXPECT_TRUE(slval::check_sl_invariance(slval::basis_fn(slval::Basis::volume), p, a).pass);
    EXPECT_TRUE(slval::check_sl_invariance(slval::basis_fn(slval::Basis::relint_sign), p, a).pass);
  }
  EXPECT_THROW(slval::check_sl_invariance(slval::basis_fn(slval::Basis::volume), unit_square(),
                                          slval::Matrix{{2, 0}, {0, 1}}),
               slval::GeometryError);
  // A translation is not linear; it breaks the origin-sensitive terms.
  const slval::ValuationFn shifted = [](const Polytope& p) {
    return slval::origin_indicator(slval::translate(p, v2(1, 0)));
  };
  const auto w = slval::check_sl_invariance(shifted, pts2({v2(-1, 0), v2(-1, 1)}), slval::Matrix{{2, 0}, {0, q(1, 2)}});
  EXPECT_FALSE(w.pass);
}

TEST(FitClassification, ProbeMatrixRows) {
  const auto m = slval::probe_matrix(2);
  const std::vector<std::vector<Scalar>> rows = {
      {1, 1, 0, 1, 0}, {1, 0, 0, 0, 0}, {1, -1, 0, 1, 0}, {1, 0, q(1, 2), 1, q(1, 2)}, {1, 0, q(1, 2), 0, 1}};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(m(i, j), rows[i][j]) << i << "," << j;
  }
  // P5 cone volume by the shoelace oracle.
  EXPECT_EQ(oracle::shoelace_area({v2(0, 0), v2(1, 0), v2(2, 0), v2(1, 1)}), Scalar(1));
  for (std::size_t n = 2; n <= 4; ++n) EXPECT_FALSE(slval::det(slval::probe_matrix(n)).is_zero());
}

TEST(FitClassification, Examples) {
  const slval::ValuationFn two_v0_three_vn = [](const Polytope& p) {
    return Scalar(2) * slval::euler_char(p) + Scalar(3) * slval::volume(p);
  };
  const auto r = slval::fit_classification(two_v0_three_vn, 2);
  EXPECT_EQ(r.coefficients, (std::array<Scalar, 5>{2, 0, 3, 0, 0}));
  EXPECT_TRUE(r.exact());
  EXPECT_EQ(r.validation_count, 100u);

  const auto full = slval::fit_classification(slval::as_fn(ClassifiedValuation::measurable(1, 2, 3, 4, 5)), 3);
  EXPECT_EQ(full.coefficients, (std::array<Scalar, 5>{1, 2, 3, 4, 5}));
  EXPECT_TRUE(full.exact());
}

TEST(FitClassification, NonValuationLeavesResidual) {
  const slval::ValuationFn vertex_count = [](const Polytope& p) { return Scalar(p.size()); };
  const auto r = slval::fit_classification(vertex_count, 2);
  EXPECT_FALSE(r.exact());
  // Over Q(sqrt 2) the rational-part valuation is not in the measurable span.
  ClassifiedValuation rp;
  rp.psi = slval::CauchySolution::rational_part();
  EXPECT_FALSE(slval::fit_classification(slval::as_fn(rp), 2, 0, 100, 2).exact());
  EXPECT_THROW(slval::fit_classification(vertex_count, 5), slval::GeometryError);
}

TEST(CheckConeDecomposition, Examples) {
  const auto t = slval::check_cone_decomposition(pts2({v2(1, 0), v2(2, 0), v2(1, 1)}));
  EXPECT_TRUE(t.pass);
  EXPECT_EQ(t.cone_volume, Scalar(1));
  EXPECT_EQ(t.visible_count, 1u);
  EXPECT_EQ(t.cone_volume, oracle::shoelace_area({v2(0, 0), v2(2, 0), v2(1, 1)}));

  const auto s = slval::check_cone_decomposition(pts2({v2(1, 1), v2(2, 1), v2(1, 2), v2(2, 2)}));
  EXPECT_TRUE(s.pass);
  EXPECT_EQ(s.cone_volume, Scalar(2));
  EXPECT_EQ(s.visible_count, 2u);
  EXPECT_EQ(s.cone_volume, oracle::shoelace_area({v2(0, 0), v2(2, 1), v2(1, 2), v2(2, 2)}));

  EXPECT_THROW(slval::check_cone_decomposition(unit_square()), slval::GeometryError);
  EXPECT_THROW(slval::check_cone_decomposition(Polytope(2)), slval::GeometryError);
}

TEST(CheckConeDecomposition, CodimensionOne) {
  const auto s = slval::check_cone_decomposition(pts2({v2(1, 0), v2(0, 1)}));
  EXPECT_TRUE(s.pass);
  EXPECT_EQ(s.cone_volume, q(1, 2));
  EXPECT_THROW(slval::check_cone_decomposition(pts2({v2(1, 1), v2(2, 2)})), slval::GeometryError);
  EXPECT_THROW(slval::check_cone_decomposition(pts2({v2(1, 1)})), slval::GeometryError);
  const Polytope tri3 = slval::from_points(3, {Vector{1, 0, 0}, Vector{0, 1, 0}, Vector{0, 0, 1}});
  const auto t3 = slval::check_cone_decomposition(tri3);
  EXPECT_TRUE(t3.pass);
  EXPECT_EQ(t3.cone_volume, q(1, 6));
}

TEST(CheckConeDecomposition, SeededAgainstOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Polytope p = slval::gen_cone_case(seed, 2);
    const auto o = slval::check_cone_decomposition(p);
    EXPECT_TRUE(o.pass);
    auto pts = p.vertices();
    pts.push_back(Vector(2));
    EXPECT_EQ(o.cone_volume, oracle::shoelace_area(pts));
  }
}

TEST(UscSequences, Examples) {
  const std::vector<Scalar> s{1, q(1, 2), q(1, 4)};
  const auto a = slval::usc_sequences(1, 0, s);
  EXPECT_EQ(a.first.values, (std::vector<Scalar>{-1, -1, -1}));
  EXPECT_EQ(a.first.limit_value, Scalar(1));
  EXPECT_FALSE(a.first.violation);
  EXPECT_EQ(a.second.values, (std::vector<Scalar>{1, 1, 1}));
  EXPECT_EQ(a.second.limit_value, Scalar(-1));
  EXPECT_TRUE(a.second.violation);
  EXPECT_TRUE(a.violated());

  const auto b = slval::usc_sequences(0, 1, s);
  EXPECT_EQ(b.first.values, (std::vector<Scalar>{1, 1, 1}));
  EXPECT_EQ(b.first.limit_value, Scalar(1));
  EXPECT_EQ(b.second.limit_value, Scalar(1));
  EXPECT_FALSE(b.violated());

  EXPECT_FALSE(slval::usc_sequences(0, 0, s).violated());
  EXPECT_TRUE(slval::usc_sequences(-1, 0, s).first.violation);
  EXPECT_TRUE(slval::usc_sequences(1, 0, s, 3).violated());

  EXPECT_THROW(slval::usc_sequences(1, 0, {1, 2}), slval::DomainError);
  EXPECT_THROW(slval::usc_sequences(1, 0, {0}), slval::DomainError);
  EXPECT_THROW(slval::usc_sequences(1, 0, {}), slval::DomainError);
}

TEST(SimplexNormalization, MapAndVolume) {
  for (std::size_t n : {2u, 3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto t = slval::gen_origin_simplex(seed, n);
      const auto o = slval::check_simplex_normalization(t);
      EXPECT_TRUE(o.pass);
      EXPECT_EQ(slval::det(o.map), Scalar(1));
    }
  }
  EXPECT_THROW(slval::check_simplex_normalization(slval::Simplex(2, {v2(1, 0), v2(0, 1), v2(1, 1)})),
               slval::GeometryError);
}

TEST(RunVerify, AllPassAndDeterministic) {
  slval::VerifyConfig cfg;
  cfg.cases = 3;
  cfg.validation = 20;
  std::vector<std::string> a, b;
  EXPECT_TRUE(slval::run_verify(cfg, [&](const slval::io::json& j) { a.push_back(j.dump()); }));
  EXPECT_TRUE(slval::run_verify(cfg, [&](const slval::io::json& j) { b.push_back(j.dump()); }));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

TEST(RunVerify, BrokenPluginProducesWitness) {
  slval::VerifyConfig cfg;
  cfg.cases = 2;
  cfg.validation = 10;
  cfg.plugins.push_back({"vertex_count", [](const Polytope& p) { return Scalar(p.size()); }});
  std::size_t witnesses = 0;
  EXPECT_FALSE(slval::run_verify(cfg, [&](const slval::io::json& j) {
    if (j.contains("witness")) {
      ++witnesses;
      EXPECT_FALSE(j["pass"].get<bool>());
      EXPECT_EQ(j["valuation"], "vertex_count");
    }
  }));
  EXPECT_GT(witnesses, 0u);
  cfg.cases = 0;
  EXPECT_THROW(slval::run_verify(cfg, [](const slval::io::json&) {}), slval::DomainError);
}
